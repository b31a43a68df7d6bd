//! The resolution degree map: extraction from a computed resolution, the
//! axioms a "good" degree map must satisfy, the closed form, and the
//! resulting classification of an algebra.

use crate::error::AlgebraError;
use crate::resolution::Resolution;

/// The degree data of a resolution: for each computed step, the distinct
/// generator degrees, and the single degree when there is exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    /// Per step: the generator degree when the step is generated in a single
    /// degree; `None` for multi-degree steps and for zero steps.
    pub values: Vec<Option<usize>>,
    /// Per step: all distinct generator degrees, ascending (empty for a zero
    /// step).
    pub degree_sets: Vec<Vec<usize>>,
}

impl DeltaMap {
    /// Index of the last computed step.
    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Steps `0..` up to (not including) the first zero step; the range on
    /// which degree data exists.
    pub fn nonzero_prefix(&self) -> usize {
        self.degree_sets
            .iter()
            .position(|s| s.is_empty())
            .unwrap_or(self.values.len())
    }

    /// True when every nonzero computed step is generated in one degree and
    /// those degrees strictly increase (so the degrees are a function of the
    /// step index and the resolution "is" its degree map).
    pub fn resolution_determined(&self) -> bool {
        let prefix = self.nonzero_prefix();
        // Zero steps may only appear as a tail.
        if self.degree_sets[prefix..].iter().any(|s| !s.is_empty()) {
            return false;
        }
        let mut prev: Option<usize> = None;
        for v in &self.values[..prefix] {
            let Some(d) = v else { return false };
            if let Some(p) = prev {
                if *d <= p {
                    return false;
                }
            }
            prev = Some(*d);
        }
        true
    }

    /// The total degree values over the nonzero prefix, when resolution-
    /// determined.
    pub fn total_values(&self) -> Option<Vec<usize>> {
        if !self.resolution_determined() {
            return None;
        }
        Some(
            self.values[..self.nonzero_prefix()]
                .iter()
                .map(|v| v.unwrap())
                .collect(),
        )
    }
}

/// Reads the degree map off a computed resolution.
pub fn extract_delta(r: &Resolution) -> DeltaMap {
    let mut values = Vec::with_capacity(r.steps.len());
    let mut degree_sets = Vec::with_capacity(r.steps.len());
    for step in &r.steps {
        let ds = step.degrees();
        values.push(if ds.len() == 1 { Some(ds[0]) } else { None });
        degree_sets.push(ds);
    }
    DeltaMap { values, degree_sets }
}

/// The verdict of testing the degree-map axioms on a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodMapReport {
    pub is_good: bool,
    /// The parameter the test ran with: the hint when given, otherwise the
    /// least index where the values deviate from the identity (1 when they
    /// never deviate).
    pub n0: usize,
    /// Last index with a value.
    pub n_max: usize,
    /// Human-readable axiom failures (empty when good).
    pub violations: Vec<String>,
}

/// Tests the good-map axioms on total degree values `values[i] = delta(i)`,
/// `i = 0..=n_max`:
///
/// * `delta(0) = 0` and the values strictly increase;
/// * `delta(i) = i` for `i < n0`;
/// * when `n0 >= 3`, `delta(n0) = n0 + 1`;
/// * `delta(i) = delta(i - n0) + delta(n0)` for `n0 <= i <= n_max`.
///
/// With no hint, `n0` is inferred as the least index where the values leave
/// the identity (1 when they never do, making the axioms those of the
/// identity map).  Fails with [`AlgebraError::InsufficientRange`] when the
/// the hinted parameter exceeds the computed range.
pub fn is_good_map(values: &[usize], hint: Option<usize>) -> Result<GoodMapReport, AlgebraError> {
    if values.is_empty() {
        return Err(AlgebraError::InsufficientRange { needed: 0, have: 0 });
    }
    let n_max = values.len() - 1;
    if let Some(h) = hint {
        if h == 0 {
            return Err(AlgebraError::BadParameter(0));
        }
        if h > n_max {
            return Err(AlgebraError::InsufficientRange {
                needed: h,
                have: n_max,
            });
        }
    }
    let mut violations = Vec::new();
    if values[0] != 0 {
        violations.push(format!("delta(0) = {} (must be 0)", values[0]));
    }
    for i in 1..=n_max {
        if values[i] <= values[i - 1] {
            violations.push(format!(
                "delta({}) = {} does not exceed delta({}) = {}",
                i,
                values[i],
                i - 1,
                values[i - 1]
            ));
        }
    }
    let inferred = (1..=n_max).find(|&i| values[i] != i);
    let n0 = hint.unwrap_or_else(|| inferred.unwrap_or(1));
    for i in 1..n0.min(n_max + 1) {
        if values[i] != i {
            violations.push(format!(
                "delta({i}) = {} (must equal {i} below the parameter {n0})",
                values[i]
            ));
        }
    }
    if n0 >= 3 && n0 <= n_max && values[n0] != n0 + 1 {
        violations.push(format!(
            "delta({n0}) = {} (must be {} for parameter {n0})",
            values[n0],
            n0 + 1
        ));
    }
    for i in n0..=n_max {
        let expect = values[i - n0] + values[n0];
        if values[i] != expect {
            violations.push(format!(
                "delta({i}) = {} breaks the recurrence delta({i}) = delta({}) + delta({n0}) = {}",
                values[i],
                i - n0,
                expect
            ));
        }
    }
    Ok(GoodMapReport {
        is_good: violations.is_empty(),
        n0,
        n_max,
        violations,
    })
}

/// The closed form of the degree map with parameter `n0` (and relation degree
/// `d` when `n0 = 2`):
///
/// * `n0 = 1`: the identity;
/// * `n0 = 2`: `delta(i) = i d / 2` for even `i`, `(i - 1) d / 2 + 1` for odd;
/// * `n0 >= 3`: writing `i = q n0 + r` with `0 <= r < n0`,
///   `delta(i) = q (n0 + 1) + r`.
pub fn closed_form_delta(n0: usize, d: Option<usize>, i: usize) -> Result<usize, AlgebraError> {
    match n0 {
        0 => Err(AlgebraError::BadParameter(0)),
        1 => Ok(i),
        2 => {
            let d = d.ok_or(AlgebraError::MissingD)?;
            if d < 2 {
                return Err(AlgebraError::BadD(d));
            }
            if i % 2 == 0 {
                Ok(i / 2 * d)
            } else {
                Ok((i - 1) / 2 * d + 1)
            }
        }
        _ => {
            let q = i / n0;
            let r = i % n0;
            Ok(q * (n0 + 1) + r)
        }
    }
}

/// Classification of an algebra from its computed resolution data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Every computed step generated in a single degree, degrees strictly
    /// increasing, and the degree map satisfies the good-map axioms.
    DeltaKoszul,
    /// Degrees are a function of the step index, but the axioms could not be
    /// confirmed on the computed range.
    DeterminedGoodnessUnknown,
    /// Some computed step has generators in several degrees.
    NotResolutionDetermined,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::DeltaKoszul => "delta-Koszul",
            Classification::DeterminedGoodnessUnknown => {
                "resolution-determined (goodness unknown)"
            }
            Classification::NotResolutionDetermined => "not resolution-determined",
        }
    }
}

/// Combines the degree data and the axiom verdict into a classification.
pub fn classify(delta: &DeltaMap, good: Option<&GoodMapReport>) -> Classification {
    if !delta.resolution_determined() {
        return Classification::NotResolutionDetermined;
    }
    match good {
        Some(g) if g.is_good => Classification::DeltaKoszul,
        _ => Classification::DeterminedGoodnessUnknown,
    }
}
