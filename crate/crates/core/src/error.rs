//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while building algebras, resolving modules, or analysing
/// resolutions.  Every failure mode is an explicit variant; nothing in this
/// crate silently truncates or approximates.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A relation mixes terms of different path lengths.
    #[error("relation {index} is not homogeneous: {detail}")]
    NonHomogeneous { index: usize, detail: String },

    /// A relation mixes terms with different sources or targets.
    #[error("relation {index} is not parallel: {detail}")]
    NonParallel { index: usize, detail: String },

    /// A relation combined to the zero element.
    #[error("relation {index} is zero after combining terms")]
    ZeroRelation { index: usize },

    /// A relation of degree zero (a linear combination of vertex idempotents).
    #[error("relation {index} has degree 0; relations must have degree at least 1")]
    DegreeZeroRelation { index: usize },

    /// A relation references an arrow id outside the quiver.
    #[error("relation {index} references an arrow that is not in the quiver")]
    ForeignArrow { index: usize },

    /// Structural problem with the quiver itself.
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    /// Bad coefficient-field request (e.g. composite modulus).
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// A degree beyond the computed cap was requested.
    #[error("degree {requested} exceeds the computed degree cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    /// A module whose generator table is not certified complete within the
    /// degree cap was asked to do something that needs the full table.
    #[error("generator table is not certified complete within the degree cap: {reason}{}",
            suggestion(.suggested_cap))]
    UncertifiedGenerators {
        reason: String,
        suggested_cap: Option<usize>,
    },

    /// The requested resolution length cannot be certified under the current
    /// degree cap.  Carries the first step that could not be built and, when
    /// one can be computed, a cap that would suffice.
    #[error("resolution horizon exceeded at step {step}: {reason}{}",
            suggestion(.suggested_cap))]
    HorizonExceeded {
        step: usize,
        reason: String,
        suggested_cap: Option<usize>,
    },

    /// Zigzag family parameter out of range.
    #[error("family parameter must be at least 3 (got {0})")]
    BadN0(usize),

    /// Degree parameter for the one-loop truncated algebra out of range.
    #[error("truncation degree must be at least 2 (got {0})")]
    BadD(usize),

    /// The closed form with parameter 2 needs the relation degree d.
    #[error("the closed form with parameter 2 requires the relation degree d")]
    MissingD,

    /// Closed-form parameter out of range.
    #[error("closed-form parameter must be at least 1 (got {0})")]
    BadParameter(usize),

    /// A degree-map check was requested beyond the range of computed values.
    #[error("insufficient range: the check needs values up to {needed}, only 0..={have} are available")]
    InsufficientRange { needed: usize, have: usize },

    /// An Ext class mixing several internal degrees where a homogeneous one
    /// is required.
    #[error("class is not homogeneous in internal degree")]
    MixedClass,

    /// An Ext class whose coefficient vector does not match the resolution.
    #[error("class is malformed: {0}")]
    MalformedClass(String),

    /// Internal invariant breach; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

fn suggestion(cap: &Option<usize>) -> String {
    match cap {
        Some(c) => format!(" (raise the degree cap to at least {c})"),
        None => String::new(),
    }
}
