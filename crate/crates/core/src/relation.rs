//! Relations: linear combinations of parallel paths of a common length.

use std::collections::BTreeMap;

use crate::error::AlgebraError;
use crate::field::{Field, Scalar};
use crate::quiver::{Path, Quiver, VertexId};

/// A relation, stored as a sorted, combined list of `(coefficient, path)`
/// terms with no zero coefficients.  Construction only normalises;
/// [`validate_relations`] checks homogeneity and parallelism.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Combines like terms and drops zeros.  The result may be empty; that is
    /// reported by [`validate_relations`], not here.
    pub fn new(field: Field, terms: Vec<(Scalar, Path)>) -> Relation {
        let mut combined: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (c, p) in terms {
            let entry = combined.entry(p).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        let terms = combined
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(p, c)| (c, p))
            .collect();
        Relation { terms }
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common path length of the terms (meaningful after validation).
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(_, p)| p.len())
    }

    /// Common source of the terms (meaningful after validation).
    pub fn source(&self) -> Option<VertexId> {
        self.terms.first().map(|(_, p)| p.source())
    }

    /// Common target of the terms (meaningful after validation).
    pub fn target(&self) -> Option<VertexId> {
        self.terms.first().map(|(_, p)| p.target())
    }
}

/// Validates a relation list against a quiver: every relation must be
/// nonzero, homogeneous (all terms of one length), parallel (all terms
/// sharing source and target), of degree at least 1, and built from arrows of
/// this quiver.
pub fn validate_relations(q: &Quiver, relations: &[Relation]) -> Result<(), AlgebraError> {
    for (index, rel) in relations.iter().enumerate() {
        if rel.is_zero() {
            return Err(AlgebraError::ZeroRelation { index });
        }
        let (_, first) = &rel.terms[0];
        for (_, p) in rel.terms() {
            if p.arrows().iter().any(|a| a.0 >= q.n_arrows()) {
                return Err(AlgebraError::ForeignArrow { index });
            }
            if p.len() != first.len() {
                return Err(AlgebraError::NonHomogeneous {
                    index,
                    detail: format!(
                        "terms of length {} and {} appear together",
                        first.len(),
                        p.len()
                    ),
                });
            }
            if p.source() != first.source() || p.target() != first.target() {
                return Err(AlgebraError::NonParallel {
                    index,
                    detail: format!(
                        "terms {} -> {} and {} -> {} appear together",
                        q.vertex_name(first.source()),
                        q.vertex_name(first.target()),
                        q.vertex_name(p.source()),
                        q.vertex_name(p.target())
                    ),
                });
            }
        }
        if first.len() == 0 {
            return Err(AlgebraError::DegreeZeroRelation { index });
        }
    }
    Ok(())
}
