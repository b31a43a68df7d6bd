//! Exact computational algebra for graded quotients of quiver path algebras.
//!
//! The crate builds finite-dimensional graded algebras `A = kQ/I` from a
//! quiver `Q` and homogeneous parallel relations, computes minimal graded
//! projective resolutions of the degree-zero module `A_0` by iterated
//! projective covers, reads off the resolution's degree map, tests the
//! degree-map axioms and the closed form, multiplies Ext classes via chain
//! lifts, and locates the minimal generator degrees of the Ext algebra.
//!
//! Design commitments:
//!
//! * **Exact arithmetic only** — rationals or a prime field, never floats.
//! * **Deterministic output** — all reductions pivot leftmost-first, so every
//!   basis, table, and report is reproducible.
//! * **Fail loudly at the horizon** — every computation happens under an
//!   explicit degree cap, and anything that cannot be certified complete
//!   under that cap is an error carrying a suggested cap, never a silently
//!   truncated answer.

pub mod algebra;
pub mod delta;
pub mod error;
pub mod family;
pub mod field;
pub mod matrix;
pub mod module;
pub mod quiver;
pub mod relation;
pub mod resolution;
pub mod yoneda;

pub use algebra::{build_quotient, GradedQuotientAlgebra};
pub use delta::{
    classify, closed_form_delta, extract_delta, is_good_map, Classification, DeltaMap,
    GoodMapReport,
};
pub use error::AlgebraError;
pub use family::{
    build_family_algebra, build_family_presentation, build_koszul_presentation,
    build_truncated_algebra, build_truncated_presentation, expected_resolution_shape,
    family_recommended_cap,
};
pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use matrix::{kernel_basis, rref, solve, Mat, PivotOrder, RowSpace};
pub use module::{
    projective_cover, top, trivial_module, FreeGenerator, FreeModule, GradedModule,
    ProjectiveCover, TopEntry, TopTable,
};
pub use quiver::{enumerate_paths, Arrow, ArrowId, Path, Quiver, VertexId};
pub use relation::{validate_relations, Relation};
pub use resolution::{
    differentials_compose_to_zero, euler_check, is_minimal, minimal_resolution, EulerReport,
    EulerRow, Resolution, ResolutionStep,
};
pub use yoneda::{
    basis_class, degree_obstruction, ext1_power_dims, ext_groups, lift_class, lift_class_with,
    minimal_generator_degrees, yoneda_product, yoneda_product_with, ChainLift, ExtClass,
    ExtGroup, YonedaRow, YonedaSummary,
};
