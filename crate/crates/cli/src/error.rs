//! Command-line error type with stable exit codes.

use deltak_core::AlgebraError;
use thiserror::Error;

/// Everything a command can fail with, sorted into the exit-code classes
/// the binary reports: 2 for parse errors, 3 for validation errors, 4 for
/// degree-horizon errors, 1 for anything else.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("error at line {line}, column {column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Validation(AlgebraError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Horizon(AlgebraError),
    #[error("{0}")]
    Other(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_HORIZON: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Semantic { .. } => EXIT_PARSE,
            CliError::Validation(_) | CliError::Invalid(_) => EXIT_VALIDATION,
            CliError::Horizon(_) => EXIT_HORIZON,
            CliError::Other(_) | CliError::Io(_) => EXIT_OTHER,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> CliError {
        match e {
            AlgebraError::HorizonExceeded { .. }
            | AlgebraError::UncertifiedGenerators { .. }
            | AlgebraError::CapExceeded { .. }
            | AlgebraError::InsufficientRange { .. } => CliError::Horizon(e),
            AlgebraError::Internal(_) => CliError::Other(e.to_string()),
            _ => CliError::Validation(e),
        }
    }
}
