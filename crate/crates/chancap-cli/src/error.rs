//! CLI errors mapped onto the documented exit codes:
//! 1 usage, 2 validation failure, 3 property violation.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("validation: {0}")]
    Validation(String),

    #[error("property violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Violation(_) => 3,
        }
    }
}

impl From<chancap::Error> for CliError {
    fn from(e: chancap::Error) -> Self {
        match e {
            chancap::Error::PropertyViolation { what } => CliError::Violation(what),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
