//! Frozen Ext-algebra data for the witness algebras: group dimensions,
//! decomposable spans, powers of the degree-one part, and minimal generator
//! degrees — plus structural invariants of the product itself (unitality,
//! associativity, internal-degree additivity, independence from lift
//! choices).

use deltak_core::{
    basis_class, build_family_algebra, build_quotient, build_truncated_algebra,
    degree_obstruction, ext1_power_dims, ext_groups, extract_delta, family_recommended_cap,
    minimal_generator_degrees, minimal_resolution, yoneda_product, yoneda_product_with,
    ExtClass, Field, Path, PivotOrder, Quiver, Relation, Resolution,
};

fn family_resolution(n0: usize, steps: usize) -> Resolution {
    let cap = family_recommended_cap(n0, steps);
    let alg = build_family_algebra(Field::Rationals, n0, cap).unwrap();
    minimal_resolution(&alg, steps).unwrap()
}

#[test]
fn ext_dimensions_for_the_family() {
    let r3 = family_resolution(3, 7);
    let dims: Vec<usize> = ext_groups(&r3).iter().map(|g| g.dim).collect();
    assert_eq!(dims, vec![3, 4, 3, 3, 4, 3, 3, 4]);

    let r4 = family_resolution(4, 9);
    let dims: Vec<usize> = ext_groups(&r4).iter().map(|g| g.dim).collect();
    assert_eq!(dims, vec![4, 6, 6, 4, 4, 6, 6, 4, 4, 6]);

    // Internal degrees are minus the generator degrees.
    let groups = ext_groups(&r4);
    assert_eq!(groups[0].internal_degrees, vec![(0, 4)]);
    assert_eq!(groups[1].internal_degrees, vec![(-1, 6)]);
    assert_eq!(groups[4].internal_degrees, vec![(-5, 4)]);
}

#[test]
fn decomposable_spans_for_parameter_3() {
    let r = family_resolution(3, 7);
    let summary = minimal_generator_degrees(&r, 7).unwrap();
    let expected_dims = [3, 4, 3, 3, 4, 3, 3, 4];
    let expected_spans = [0, 0, 3, 0, 4, 3, 3, 4];
    for n in 0..=7 {
        assert_eq!(summary.rows[n].dim, expected_dims[n], "dim at {n}");
        assert_eq!(
            summary.rows[n].decomposable_dim, expected_spans[n],
            "span at {n}"
        );
    }
    assert_eq!(summary.minimal_generator_degrees, vec![1, 3]);
}

#[test]
fn decomposable_spans_for_parameter_4() {
    let r = family_resolution(4, 9);
    let summary = minimal_generator_degrees(&r, 9).unwrap();
    let expected_dims = [4, 6, 6, 4, 4, 6, 6, 4, 4, 6];
    let expected_spans = [0, 0, 6, 4, 0, 6, 6, 4, 4, 6];
    for n in 0..=9 {
        assert_eq!(summary.rows[n].dim, expected_dims[n], "dim at {n}");
        assert_eq!(
            summary.rows[n].decomposable_dim, expected_spans[n],
            "span at {n}"
        );
    }
    assert_eq!(summary.minimal_generator_degrees, vec![1, 4]);
}

#[test]
fn ext1_powers_for_the_family() {
    let r3 = family_resolution(3, 7);
    assert_eq!(ext1_power_dims(&r3, 3).unwrap(), vec![4, 3, 0]);

    let r4 = family_resolution(4, 9);
    assert_eq!(ext1_power_dims(&r4, 4).unwrap(), vec![6, 6, 4, 0]);
}

#[test]
fn truncated_one_loop_generators() {
    // Quadratic: generated in degree 1; every higher group is decomposable.
    let a2 = build_truncated_algebra(Field::Rationals, 2, 9).unwrap();
    let r2 = minimal_resolution(&a2, 7).unwrap();
    let s2 = minimal_generator_degrees(&r2, 7).unwrap();
    assert_eq!(s2.minimal_generator_degrees, vec![1]);
    for row in &s2.rows[2..] {
        assert_eq!(row.decomposable_dim, row.dim, "degree {}", row.n);
    }

    // Cubic: generated in degrees 1 and 2, with the square of the
    // degree-one part vanishing.
    let a3 = build_truncated_algebra(Field::Rationals, 3, 10).unwrap();
    let r3 = minimal_resolution(&a3, 6).unwrap();
    let s3 = minimal_generator_degrees(&r3, 6).unwrap();
    assert_eq!(s3.minimal_generator_degrees, vec![1, 2]);
    for row in &s3.rows[3..] {
        assert_eq!(row.decomposable_dim, row.dim, "degree {}", row.n);
    }
    assert_eq!(ext1_power_dims(&r3, 2).unwrap(), vec![1, 0]);
}

#[test]
fn products_are_unital() {
    let r = family_resolution(3, 6);
    let field = r.algebra().field();
    let dim0 = r.steps[0].free.gens().len();
    let identity = ExtClass {
        degree: 0,
        coeffs: vec![field.one(); dim0],
    };
    for n in 0..=4 {
        for i in 0..r.steps[n].free.gens().len() {
            let eta = basis_class(&r, n, i);
            let left = yoneda_product(&r, &identity, &eta).unwrap();
            let right = yoneda_product(&r, &eta, &identity).unwrap();
            assert_eq!(left, eta, "left unit at Ext^{n} basis {i}");
            assert_eq!(right, eta, "right unit at Ext^{n} basis {i}");
        }
    }
}

#[test]
fn products_are_associative() {
    let r = family_resolution(3, 7);
    let degrees = [(1usize, 1usize, 2usize), (1, 2, 1), (2, 1, 1), (1, 3, 1), (1, 1, 1)];
    for (a, b, c) in degrees {
        for i in 0..r.steps[a].free.gens().len() {
            for j in 0..r.steps[b].free.gens().len() {
                for k in 0..r.steps[c].free.gens().len() {
                    let xi = basis_class(&r, a, i);
                    let eta = basis_class(&r, b, j);
                    let zeta = basis_class(&r, c, k);
                    let xy = yoneda_product(&r, &xi, &eta).unwrap();
                    let yz = yoneda_product(&r, &eta, &zeta).unwrap();
                    let left = yoneda_product(&r, &xy, &zeta).unwrap();
                    let right = yoneda_product(&r, &xi, &yz).unwrap();
                    assert_eq!(left, right, "({a},{b},{c}) at ({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn internal_degrees_add_in_products() {
    let r = family_resolution(4, 8);
    let field = r.algebra().field();
    for (a, b) in [(1usize, 1usize), (1, 2), (2, 2), (3, 1), (1, 4)] {
        let n = a + b;
        for i in 0..r.steps[a].free.gens().len() {
            for j in 0..r.steps[b].free.gens().len() {
                let xi = basis_class(&r, a, i);
                let eta = basis_class(&r, b, j);
                let ta = r.steps[a].free.gens()[i].degree;
                let tb = r.steps[b].free.gens()[j].degree;
                let prod = yoneda_product(&r, &xi, &eta).unwrap();
                for (g, c) in prod.coeffs.iter().enumerate() {
                    if !field.is_zero(c) {
                        assert_eq!(
                            r.steps[n].free.gens()[g].degree,
                            ta + tb,
                            "support at the wrong internal degree"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn products_do_not_depend_on_lift_choices() {
    let r = family_resolution(4, 8);
    for (a, b) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3), (4, 4)] {
        for i in 0..r.steps[a].free.gens().len() {
            for j in 0..r.steps[b].free.gens().len() {
                let xi = basis_class(&r, a, i);
                let eta = basis_class(&r, b, j);
                let forward = yoneda_product_with(&r, &xi, &eta, PivotOrder::Forward).unwrap();
                let reverse = yoneda_product_with(&r, &xi, &eta, PivotOrder::Reverse).unwrap();
                assert_eq!(forward, reverse, "({a},{b}) at ({i},{j})");
            }
        }
    }
}

#[test]
fn degree_obstruction_matches_actual_vanishing() {
    let r = family_resolution(3, 7);
    let field = r.algebra().field();
    let values = extract_delta(&r).total_values().unwrap();
    for a in 1..=3usize {
        for b in 1..=3usize {
            let n = a + b;
            if n > 7 {
                continue;
            }
            let obstructed = degree_obstruction(&values, a, b).unwrap();
            // Obstruction by the degree map means (a + b mod 3) wraps.
            assert_eq!(obstructed, (a % 3) + (b % 3) >= 3, "({a},{b})");
            let mut all_zero = true;
            for i in 0..r.steps[a].free.gens().len() {
                for j in 0..r.steps[b].free.gens().len() {
                    let prod =
                        yoneda_product(&r, &basis_class(&r, a, i), &basis_class(&r, b, j))
                            .unwrap();
                    if prod.coeffs.iter().any(|c| !field.is_zero(c)) {
                        all_zero = false;
                    }
                }
            }
            if obstructed {
                assert!(all_zero, "({a},{b}) must vanish by degree bookkeeping");
            } else {
                assert!(!all_zero, "({a},{b}) has nonvanishing products");
            }
        }
    }
}

#[test]
fn products_beyond_the_computed_range_fail_loudly() {
    let r = family_resolution(3, 4);
    let xi = basis_class(&r, 2, 0);
    let eta = basis_class(&r, 3, 0);
    assert!(matches!(
        yoneda_product(&r, &xi, &eta),
        Err(deltak_core::AlgebraError::HorizonExceeded { step: 5, .. })
    ));
    assert!(matches!(
        minimal_generator_degrees(&r, 9),
        Err(deltak_core::AlgebraError::HorizonExceeded { .. })
    ));
}

#[test]
fn mixed_degree_classes_multiply_via_their_parts() {
    // Two-loop algebra: Ext^2 mixes internal degrees, and products against
    // it must agree with the sum over homogeneous parts.
    let field = Field::Rationals;
    let quiver = Quiver::new(
        vec!["v1".into()],
        vec![("a".into(), 0, 0), ("b".into(), 0, 0)],
    )
    .unwrap();
    let a = Path::from_arrow(&quiver, deltak_core::ArrowId(0));
    let b = Path::from_arrow(&quiver, deltak_core::ArrowId(1));
    let aa = Path::compose(&a, &a).unwrap();
    let bbb = Path::compose(&Path::compose(&b, &b).unwrap(), &b).unwrap();
    let relations = vec![
        Relation::new(field, vec![(field.one(), aa)]),
        Relation::new(field, vec![(field.one(), bbb)]),
    ];
    let alg = build_quotient(field, quiver, relations, 6).unwrap();
    let r = minimal_resolution(&alg, 2).unwrap();
    assert_eq!(r.steps[2].degrees(), vec![2, 3]);

    let xi = basis_class(&r, 0, 0);
    let mixed = ExtClass {
        degree: 2,
        coeffs: vec![field.one(), field.integer(5)],
    };
    let prod = yoneda_product(&r, &xi, &mixed).unwrap();
    let part0 = yoneda_product(&r, &xi, &basis_class(&r, 2, 0)).unwrap();
    let part1 = yoneda_product(&r, &xi, &basis_class(&r, 2, 1)).unwrap();
    let recombined: Vec<_> = part0
        .coeffs
        .iter()
        .zip(&part1.coeffs)
        .map(|(x, y)| field.add(x, &field.mul(&field.integer(5), y)))
        .collect();
    assert_eq!(prod.coeffs, recombined);
}

#[test]
fn ext_products_agree_across_fields() {
    // The family's structure constants are integers, so products over the
    // rationals and over a prime field agree after reduction; compare the
    // dimension data which is what the toolkit reports.
    for n0 in [3usize, 4] {
        let steps = 2 * n0 + 1;
        let cap = family_recommended_cap(n0, steps);
        let over_q = build_family_algebra(Field::Rationals, n0, cap).unwrap();
        let over_p = build_family_algebra(Field::prime_default(), n0, cap).unwrap();
        let rq = minimal_resolution(&over_q, steps).unwrap();
        let rp = minimal_resolution(&over_p, steps).unwrap();
        let sq = minimal_generator_degrees(&rq, steps).unwrap();
        let sp = minimal_generator_degrees(&rp, steps).unwrap();
        for (rowq, rowp) in sq.rows.iter().zip(&sp.rows) {
            assert_eq!(rowq.dim, rowp.dim);
            assert_eq!(rowq.decomposable_dim, rowp.decomposable_dim);
        }
        assert_eq!(
            sq.minimal_generator_degrees,
            sp.minimal_generator_degrees
        );
        assert_eq!(sq.minimal_generator_degrees, vec![1, n0]);
    }
}
