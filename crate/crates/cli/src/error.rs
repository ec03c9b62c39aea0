use std::fmt;

use dflex_core::Error as CoreError;

/// CLI failure categories, each with a fixed exit code. Every failure is
/// reported as a single line on stderr so scripts can match on the category
/// prefix.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// A flag or argument problem detected after clap parsing (exit 2).
    Usage(String),
    /// The model file cannot be read, parsed, or validated (exit 3).
    Model(String),
    /// A computation on a valid model failed (exit 4).
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 3,
            CliError::Compute(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Model(msg) => write!(f, "model: {msg}"),
            CliError::Compute(msg) => write!(f, "compute: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ZeroProbabilityEvidence(_)
            | CoreError::PolicyExplosion { .. }
            | CoreError::BadInterval { .. }
            | CoreError::InvalidQuadrature(_)
            | CoreError::NoLines
            | CoreError::NonFiniteLine(_) => CliError::Compute(e.to_string()),
            _ => CliError::Model(e.to_string()),
        }
    }
}
