//! Command-line workflows for the deltak toolkit: a presentation language
//! for graded quotients of path algebras, resolution and Ext-algebra
//! commands, and machine-readable reports.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod report;

pub use commands::{cmd_family, cmd_growth, cmd_resolve, cmd_yoneda, ComputeOpts, FamilyKind};
pub use dsl::{default_prime, effective_field, parse_algebra, print_algebra, AlgebraFile, FieldSpec};
pub use error::{CliError, EXIT_HORIZON, EXIT_OK, EXIT_OTHER, EXIT_PARSE, EXIT_VALIDATION};
pub use report::{render_relation, ReportDocument};
