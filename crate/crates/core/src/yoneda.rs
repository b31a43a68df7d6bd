//! The Ext algebra of the trivial module: groups read off a minimal
//! resolution, products by chain-map lifting, and minimal generator degrees.
//!
//! Because the resolution is minimal, the Hom-complex differentials vanish,
//! so `Ext^n` has one basis functional per generator of the `n`-th step, and
//! a product class is *exactly* the coefficient vector produced by any lift —
//! different solution choices inside the lift cannot change it (they differ
//! by maps into the radical, which the generator functionals kill).  Tests
//! exercise that independence with both pivot orders.

use crate::error::AlgebraError;
use crate::field::Scalar;
use crate::matrix::{solve, Mat, PivotOrder, RowSpace};
use crate::resolution::Resolution;

/// An element of `Ext^degree`, as a coefficient vector over the generators
/// of the `degree`-th resolution step.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtClass {
    pub degree: usize,
    pub coeffs: Vec<Scalar>,
}

/// One graded piece of the Ext algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGroup {
    pub n: usize,
    pub dim: usize,
    /// Dimension per internal degree; the internal degree of a basis
    /// functional is minus the generator degree it is dual to.
    pub internal_degrees: Vec<(i64, usize)>,
}

/// The groups `Ext^0 .. Ext^{n_max}` where `n_max` is the last computed step.
pub fn ext_groups(r: &Resolution) -> Vec<ExtGroup> {
    r.steps
        .iter()
        .enumerate()
        .map(|(n, step)| {
            let mut internal: Vec<(i64, usize)> = Vec::new();
            for gen in step.free.gens() {
                let d = -(gen.degree as i64);
                match internal.iter_mut().find(|(deg, _)| *deg == d) {
                    Some((_, c)) => *c += 1,
                    None => internal.push((d, 1)),
                }
            }
            internal.sort_by_key(|&(d, _)| std::cmp::Reverse(d));
            ExtGroup {
                n,
                dim: step.free.gens().len(),
                internal_degrees: internal,
            }
        })
        .collect()
}

/// The `i`-th basis functional of `Ext^n` (dual to the `i`-th generator).
pub fn basis_class(r: &Resolution, n: usize, i: usize) -> ExtClass {
    let field = r.algebra().field();
    let dim = r.steps[n].free.gens().len();
    let mut coeffs = vec![field.zero(); dim];
    coeffs[i] = field.one();
    ExtClass { degree: n, coeffs }
}

/// A chain map lifting a homogeneous Ext class `eta` of cohomological degree
/// `b` and internal degree `-t`: component `k` maps the `(b+k)`-th step to
/// the `k`-th, lowering internal degree by `t`, and component 0 lifts `eta`
/// through the augmentation.
pub struct ChainLift {
    /// Cohomological degree of the lifted class.
    pub class_degree: usize,
    /// Common generator degree `t` of the class's support.
    pub internal: usize,
    /// `components[k].maps[j]`: matrix of `(P_{b+k})_j -> (P_k)_{j-t}`.
    pub components: Vec<LiftComponent>,
}

pub struct LiftComponent {
    pub maps: Vec<Mat>,
}

fn class_internal_degree(r: &Resolution, class: &ExtClass) -> Result<usize, AlgebraError> {
    let field = r.algebra().field();
    let gens = r.steps[class.degree].free.gens();
    if class.coeffs.len() != gens.len() {
        return Err(AlgebraError::MalformedClass(format!(
            "{} coefficients for {} generators",
            class.coeffs.len(),
            gens.len()
        )));
    }
    let mut t: Option<usize> = None;
    for (c, gen) in class.coeffs.iter().zip(gens) {
        if field.is_zero(c) {
            continue;
        }
        match t {
            None => t = Some(gen.degree),
            Some(t0) if t0 == gen.degree => {}
            Some(_) => return Err(AlgebraError::MixedClass),
        }
    }
    // The zero class lifts as zero; internal degree 0 works vacuously.
    Ok(t.unwrap_or(0))
}

/// Lifts a homogeneous class to a chain map covering components `0..=range`.
/// Fails when the resolution has fewer than `class.degree + range` steps, or
/// when the class mixes internal degrees.
pub fn lift_class(r: &Resolution, class: &ExtClass, range: usize) -> Result<ChainLift, AlgebraError> {
    lift_class_with(r, class, range, PivotOrder::Forward)
}

/// [`lift_class`] with an explicit pivot preference for the interior solves;
/// observable products are identical for both orders.
pub fn lift_class_with(
    r: &Resolution,
    class: &ExtClass,
    range: usize,
    order: PivotOrder,
) -> Result<ChainLift, AlgebraError> {
    let b = class.degree;
    if b + range >= r.steps.len() {
        return Err(AlgebraError::HorizonExceeded {
            step: b + range,
            reason: format!(
                "lifting needs resolution step {} but only 0..={} were computed",
                b + range,
                r.steps.len() - 1
            ),
            suggested_cap: None,
        });
    }
    let field = r.algebra().field();
    let cap = r.algebra().cap();
    let t = class_internal_degree(r, class)?;

    // Each component is determined by its values on the source step's
    // generators; gen_values[g] is the image in (P_k)_{gen degree - t} of the
    // g-th generator of P_{b+k}.
    let mut components: Vec<LiftComponent> = Vec::with_capacity(range + 1);

    for k in 0..=range {
        let source = &r.steps[b + k].free;
        let target = &r.steps[k].free;
        let mut gen_values: Vec<Vec<Scalar>> = Vec::with_capacity(source.gens().len());
        for (g, gen) in source.gens().iter().enumerate() {
            let s = gen.degree;
            if s < t {
                gen_values.push(Vec::new());
                continue;
            }
            let tdeg = s - t;
            if k == 0 {
                // Through the augmentation: the class coefficient times the
                // unit slot of the degree-0 generator at this vertex.
                let mut v = vec![field.zero(); target.dim(tdeg)];
                if tdeg == 0 && !field.is_zero(&class.coeffs[g]) {
                    let g0 = target
                        .gens()
                        .iter()
                        .position(|p0| p0.vertex == gen.vertex && p0.degree == 0)
                        .ok_or_else(|| {
                            AlgebraError::Internal("step 0 misses a vertex generator".into())
                        })?;
                    let (_, slot) = target.unit_slot(g0);
                    v[slot] = class.coeffs[g].clone();
                }
                gen_values.push(v);
                continue;
            }
            // rhs = previous component applied to the differential of the
            // generator.
            let (sdeg, slot) = source.unit_slot(g);
            debug_assert_eq!(sdeg, s);
            let d_src = &r.steps[b + k].differential.as_ref().expect("k >= 1")[s];
            let d_col = d_src.col(slot);
            let rhs = components[k - 1].maps[s].apply(field, &d_col);
            // Solve d_k x = rhs in target degree tdeg.
            let d_tgt = &r.steps[k].differential.as_ref().expect("k >= 1")[tdeg];
            let x = solve(field, d_tgt, &rhs, order).ok_or_else(|| {
                AlgebraError::Internal("chain lift hit an unsolvable step".into())
            })?;
            gen_values.push(x);
        }

        // Expand generator values to full degreewise matrices.
        let mut maps: Vec<Mat> = Vec::with_capacity(cap + 1);
        for j in 0..=cap {
            let nrows = if j >= t { target.dim(j - t) } else { 0 };
            let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(source.dim(j));
            for slot in source.slots(j) {
                let gen = &source.gens()[slot.gen];
                if gen.degree < t || gen_values[slot.gen].is_empty() {
                    cols.push(vec![field.zero(); nrows]);
                    continue;
                }
                let p = &r.algebra().basis(j - gen.degree)[slot.basis_idx];
                let img = target.act_path(gen.degree - t, &gen_values[slot.gen], p);
                debug_assert_eq!(img.len(), nrows);
                cols.push(img);
            }
            maps.push(Mat::from_cols(field, cols, nrows));
        }
        components.push(LiftComponent { maps });
    }

    Ok(ChainLift {
        class_degree: b,
        internal: t,
        components,
    })
}

/// Evaluates `xi . lift` on the generators of step `a + b`, where
/// `a = xi.degree` and the lift came from a class of degree `b`.
fn product_from_lift(
    r: &Resolution,
    xi: &ExtClass,
    lift: &ChainLift,
) -> Result<ExtClass, AlgebraError> {
    let field = r.algebra().field();
    let a = xi.degree;
    let b = lift.class_degree;
    let n = a + b;
    if a >= lift.components.len() {
        return Err(AlgebraError::Internal(
            "lift range too short for this product".into(),
        ));
    }
    let xi_gens = r.steps[a].free.gens();
    if xi.coeffs.len() != xi_gens.len() {
        return Err(AlgebraError::MalformedClass(format!(
            "{} coefficients for {} generators",
            xi.coeffs.len(),
            xi_gens.len()
        )));
    }
    let source = &r.steps[n].free;
    let target = &r.steps[a].free;
    let t = lift.internal;
    let mut coeffs = Vec::with_capacity(source.gens().len());
    for (h, hgen) in source.gens().iter().enumerate() {
        let (s, slot) = source.unit_slot(h);
        debug_assert_eq!(s, hgen.degree);
        let mut acc = field.zero();
        if s >= t {
            let col = lift.components[a].maps[s].col(slot);
            for (g, ggen) in xi_gens.iter().enumerate() {
                if field.is_zero(&xi.coeffs[g]) || ggen.degree != s - t {
                    continue;
                }
                let (_, gslot) = target.unit_slot(g);
                if !field.is_zero(&col[gslot]) {
                    acc = field.add(&acc, &field.mul(&xi.coeffs[g], &col[gslot]));
                }
            }
        }
        coeffs.push(acc);
    }
    Ok(ExtClass { degree: n, coeffs })
}

/// The Yoneda product `xi . eta` (composition: `eta`'s lift feeds into
/// `xi`).  Splits `eta` into homogeneous parts, so mixed-degree classes are
/// fine.  Fails loudly when `xi.degree + eta.degree` exceeds the computed
/// steps.
pub fn yoneda_product(
    r: &Resolution,
    xi: &ExtClass,
    eta: &ExtClass,
) -> Result<ExtClass, AlgebraError> {
    yoneda_product_with(r, xi, eta, PivotOrder::Forward)
}

/// [`yoneda_product`] with an explicit pivot preference for the lift solves.
pub fn yoneda_product_with(
    r: &Resolution,
    xi: &ExtClass,
    eta: &ExtClass,
    order: PivotOrder,
) -> Result<ExtClass, AlgebraError> {
    let field = r.algebra().field();
    let a = xi.degree;
    let b = eta.degree;
    let n = a + b;
    if n >= r.steps.len() {
        return Err(AlgebraError::HorizonExceeded {
            step: n,
            reason: format!(
                "the product lands in Ext^{n} but only steps 0..={} were computed",
                r.steps.len() - 1
            ),
            suggested_cap: None,
        });
    }
    let eta_gens = r.steps[b].free.gens();
    if eta.coeffs.len() != eta_gens.len() {
        return Err(AlgebraError::MalformedClass(format!(
            "{} coefficients for {} generators",
            eta.coeffs.len(),
            eta_gens.len()
        )));
    }
    // Split eta by generator degree.
    let mut degrees: Vec<usize> = eta_gens
        .iter()
        .zip(&eta.coeffs)
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(g, _)| g.degree)
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let dim_n = r.steps[n].free.gens().len();
    let mut total = vec![field.zero(); dim_n];
    for t in degrees {
        let part = ExtClass {
            degree: b,
            coeffs: eta_gens
                .iter()
                .zip(&eta.coeffs)
                .map(|(g, c)| if g.degree == t { c.clone() } else { field.zero() })
                .collect(),
        };
        let lift = lift_class_with(r, &part, a, order)?;
        let prod = product_from_lift(r, xi, &lift)?;
        for (x, y) in total.iter_mut().zip(&prod.coeffs) {
            *x = field.add(x, y);
        }
    }
    Ok(ExtClass {
        degree: n,
        coeffs: total,
    })
}

/// One row of the generation analysis.
#[derive(Clone, Debug)]
pub struct YonedaRow {
    pub n: usize,
    pub dim: usize,
    /// Dimension of the span of all products from lower positive degrees.
    pub decomposable_dim: usize,
    /// True when `Ext^n` needs new algebra generators (`dim >
    /// decomposable_dim`), for `n >= 1`.
    pub new_generators: bool,
}

/// Generation analysis of the Ext algebra up to cohomological degree `n_max`.
#[derive(Clone, Debug)]
pub struct YonedaSummary {
    pub rows: Vec<YonedaRow>,
    /// Positive degrees that contribute minimal algebra generators.
    pub minimal_generator_degrees: Vec<usize>,
}

/// Computes, for each `n <= n_max`, the span of decomposable classes
/// (products of positive-degree classes) inside `Ext^n`, and the resulting
/// minimal generator degrees.
pub fn minimal_generator_degrees(
    r: &Resolution,
    n_max: usize,
) -> Result<YonedaSummary, AlgebraError> {
    if n_max >= r.steps.len() {
        return Err(AlgebraError::HorizonExceeded {
            step: n_max,
            reason: format!(
                "the analysis needs steps 0..={n_max} but only 0..={} were computed",
                r.steps.len() - 1
            ),
            suggested_cap: None,
        });
    }
    let field = r.algebra().field();
    // Lift every basis class of every positive degree once, far enough for
    // all products that land at or below n_max.
    let mut lifts: Vec<Vec<ChainLift>> = Vec::with_capacity(n_max + 1);
    lifts.push(Vec::new()); // degree 0 unused
    for b in 1..=n_max {
        let dim = r.steps[b].free.gens().len();
        let mut row = Vec::with_capacity(dim);
        for i in 0..dim {
            row.push(lift_class(r, &basis_class(r, b, i), n_max - b)?);
        }
        lifts.push(row);
    }

    let mut rows = Vec::with_capacity(n_max + 1);
    let mut minimal = Vec::new();
    for n in 0..=n_max {
        let dim = r.steps[n].free.gens().len();
        let mut span = RowSpace::new(field, dim);
        for a in 1..n {
            let b = n - a;
            for i in 0..r.steps[a].free.gens().len() {
                let xi = basis_class(r, a, i);
                for lift in &lifts[b] {
                    let prod = product_from_lift(r, &xi, lift)?;
                    span.insert(prod.coeffs);
                }
            }
        }
        let decomposable_dim = span.dim();
        let new_generators = n >= 1 && dim > decomposable_dim;
        if new_generators {
            minimal.push(n);
        }
        rows.push(YonedaRow {
            n,
            dim,
            decomposable_dim,
            new_generators,
        });
    }
    Ok(YonedaSummary {
        rows,
        minimal_generator_degrees: minimal,
    })
}

/// Dimensions of the spans of the powers of `Ext^1`, for exponents
/// `1..=k_max`.
pub fn ext1_power_dims(r: &Resolution, k_max: usize) -> Result<Vec<usize>, AlgebraError> {
    if k_max >= r.steps.len() {
        return Err(AlgebraError::HorizonExceeded {
            step: k_max,
            reason: format!(
                "the power analysis needs steps 0..={k_max} but only 0..={} were computed",
                r.steps.len() - 1
            ),
            suggested_cap: None,
        });
    }
    let field = r.algebra().field();
    let dim1 = r.steps[1].free.gens().len();
    let mut dims = Vec::with_capacity(k_max);
    let mut current: Vec<ExtClass> = (0..dim1).map(|i| basis_class(r, 1, i)).collect();
    dims.push(current.len());
    for k in 2..=k_max {
        let dim_k = r.steps[k].free.gens().len();
        let mut span = RowSpace::new(field, dim_k);
        for eta in &current {
            for i in 0..dim1 {
                let xi = basis_class(r, 1, i);
                let prod = yoneda_product(r, &xi, eta)?;
                span.insert(prod.coeffs);
            }
        }
        // Rebuild a basis of the span as classes for the next round.
        current = (0..span.dim())
            .map(|row| ExtClass {
                degree: k,
                coeffs: span_row(&span, row),
            })
            .collect();
        dims.push(current.len());
    }
    Ok(dims)
}

fn span_row(space: &RowSpace, row: usize) -> Vec<Scalar> {
    space.echelon_rows()[row].clone()
}

/// Whether degree bookkeeping alone forces every product
/// `Ext^a . Ext^b -> Ext^{a+b}` to vanish: the internal degrees add, so a
/// nonzero product needs `delta(a) + delta(b) = delta(a+b)`.  `None` when
/// `a + b` is outside the value table.
pub fn degree_obstruction(values: &[usize], a: usize, b: usize) -> Option<bool> {
    let sum = a + b;
    if a >= values.len() || b >= values.len() || sum >= values.len() {
        return None;
    }
    Some(values[a] + values[b] != values[sum])
}
