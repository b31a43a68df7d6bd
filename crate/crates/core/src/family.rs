//! The witness algebras: a two-arrow zigzag family indexed by an integer
//! parameter, plus the classical one-loop truncated algebras used as
//! controls.
//!
//! The zigzag member with parameter `n0 >= 3` lives on vertices
//! `v1, ..., v[n0]` with arrows `a[i]: v[i] -> v[i+1]` and
//! `b[i]: v[i+1] -> v[i]`.  Writing products function-style (the right-hand
//! factor acts first), its relations are, for `1 <= i <= n0 - 2`:
//!
//! * `a[i]*b[i] - b[i+1]*a[i+1]`  (parallel loops at `v[i+1]`),
//! * `a[i+1]*a[i]`,
//! * `b[i]*b[i+1]`.
//!
//! Its minimal resolution follows a reflection-symmetric pattern that repeats
//! with period `n0` in the step index and `n0 + 1` in the degree;
//! [`expected_resolution_shape`] returns the closed form.

use std::sync::Arc;

use crate::algebra::{build_quotient, GradedQuotientAlgebra};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::module::TopEntry;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::relation::Relation;

/// Builds the zigzag family member with the given parameter (`n0 >= 3`).
pub fn build_family_presentation(
    field: Field,
    n0: usize,
) -> Result<(Quiver, Vec<Relation>), AlgebraError> {
    if n0 < 3 {
        return Err(AlgebraError::BadN0(n0));
    }
    let vertices: Vec<String> = (1..=n0).map(|i| format!("v{i}")).collect();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    for t in 0..n0 - 1 {
        arrows.push((format!("a{}", t + 1), t, t + 1));
    }
    for t in 0..n0 - 1 {
        arrows.push((format!("b{}", t + 1), t + 1, t));
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let a = |t: usize| ArrowId(t);
    let b = |t: usize| ArrowId(n0 - 1 + t);

    let mut relations = Vec::new();
    let one = field.one();
    for t in 0..n0 - 2 {
        // a[i]*b[i] - b[i+1]*a[i+1] at v[i+1] (1-based i = t + 1).
        let ab = Path::compose(
            &Path::from_arrow(&quiver, b(t)),
            &Path::from_arrow(&quiver, a(t)),
        )
        .expect("loop at the shared vertex");
        let ba = Path::compose(
            &Path::from_arrow(&quiver, a(t + 1)),
            &Path::from_arrow(&quiver, b(t + 1)),
        )
        .expect("loop at the shared vertex");
        relations.push(Relation::new(
            field,
            vec![(one.clone(), ab), (field.integer(-1), ba)],
        ));
        // a[i+1]*a[i].
        let aa = Path::compose(
            &Path::from_arrow(&quiver, a(t)),
            &Path::from_arrow(&quiver, a(t + 1)),
        )
        .expect("consecutive forward arrows compose");
        relations.push(Relation::new(field, vec![(one.clone(), aa)]));
        // b[i]*b[i+1].
        let bb = Path::compose(
            &Path::from_arrow(&quiver, b(t + 1)),
            &Path::from_arrow(&quiver, b(t)),
        )
        .expect("consecutive backward arrows compose");
        relations.push(Relation::new(field, vec![(one.clone(), bb)]));
    }
    Ok((quiver, relations))
}

/// Builds the one-loop algebra with the loop squared to zero (the classical
/// Koszul control).
pub fn build_koszul_presentation(field: Field) -> (Quiver, Vec<Relation>) {
    build_truncated_presentation(field, 2).expect("2 >= 2")
}

/// Builds the one-loop algebra with the loop's `d`-th power zero (`d >= 2`).
pub fn build_truncated_presentation(
    field: Field,
    d: usize,
) -> Result<(Quiver, Vec<Relation>), AlgebraError> {
    if d < 2 {
        return Err(AlgebraError::BadD(d));
    }
    let quiver = Quiver::new(vec!["v1".into()], vec![("x".into(), 0, 0)])?;
    let mut p = Path::identity(VertexId(0));
    for _ in 0..d {
        p = p.extend(&quiver, ArrowId(0)).expect("loop composes");
    }
    let r = Relation::new(field, vec![(field.one(), p)]);
    Ok((quiver, vec![r]))
}

/// Builds the zigzag family member as a graded quotient under the given cap.
pub fn build_family_algebra(
    field: Field,
    n0: usize,
    cap: usize,
) -> Result<Arc<GradedQuotientAlgebra>, AlgebraError> {
    let (quiver, relations) = build_family_presentation(field, n0)?;
    build_quotient(field, quiver, relations, cap)
}

/// Builds the one-loop truncated algebra as a graded quotient under the
/// given cap.
pub fn build_truncated_algebra(
    field: Field,
    d: usize,
    cap: usize,
) -> Result<Arc<GradedQuotientAlgebra>, AlgebraError> {
    let (quiver, relations) = build_truncated_presentation(field, d)?;
    build_quotient(field, quiver, relations, cap)
}

/// A degree cap that certifies a family resolution of the given length with
/// margin: the top generator degree of step `s` is at most
/// `ceil(s (n0 + 1) / n0)`, and kernels need two more degrees of headroom
/// (the family algebras vanish from degree 3 on).
pub fn family_recommended_cap(n0: usize, steps: usize) -> usize {
    (steps * (n0 + 1)).div_ceil(n0) + 2
}

/// The closed-form resolution shape of the zigzag member with parameter
/// `n0`, at step `n`: the generator multiset of the `n`-th free module, as
/// (vertex, degree, multiplicity) entries sorted by vertex.
///
/// Writing `n = q n0 + r` with `1 <= r <= n0` for `n >= 1`:
///
/// * every generator sits in the single degree `q (n0 + 1) + r` when
///   `r < n0`, and `(q + 1)(n0 + 1)` when `r = n0`;
/// * the multiplicity at vertex `v` (1-based) is
///   `1 + #{ t : 1 <= t <= depth, t + 1 <= v <= n0 - t }` where `depth` is
///   `0` for `r` in `{n0 - 1, n0}` and `min(r, n0 - 1 - r)` otherwise.
///
/// Step 0 is one generator per vertex in degree 0.
pub fn expected_resolution_shape(n0: usize, n: usize) -> Result<Vec<TopEntry>, AlgebraError> {
    if n0 < 3 {
        return Err(AlgebraError::BadN0(n0));
    }
    if n == 0 {
        return Ok((0..n0)
            .map(|v| TopEntry {
                vertex: VertexId(v),
                degree: 0,
                multiplicity: 1,
            })
            .collect());
    }
    let r = (n - 1) % n0 + 1;
    let q = (n - r) / n0;
    let degree = if r < n0 {
        q * (n0 + 1) + r
    } else {
        (q + 1) * (n0 + 1)
    };
    let depth = if r == n0 - 1 || r == n0 {
        0
    } else {
        r.min(n0 - 1 - r)
    };
    let mut entries = Vec::with_capacity(n0);
    for v in 1..=n0 {
        let extra = (1..=depth).filter(|&t| t + 1 <= v && v <= n0 - t).count();
        entries.push(TopEntry {
            vertex: VertexId(v - 1),
            degree,
            multiplicity: 1 + extra,
        });
    }
    Ok(entries)
}
