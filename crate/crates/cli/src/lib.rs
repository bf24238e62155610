//! Command implementations, JSON formats and the verification suite behind
//! the `gindex` binary.

pub mod commands;
pub mod json;
pub mod verify;

use gindex_core::Error as CoreError;

/// CLI-level error carrying the process exit code.
///
/// Exit codes: 1 for parse/validation problems, 2 for singular evaluation
/// points (and group-size caps), 3 for a failed verification identity.
#[derive(Clone, Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 1 }
    }

    pub fn singular(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::SingularElement { .. }
            | CoreError::SingularLambda
            | CoreError::GroupTooLarge { .. } => 2,
            _ => 1,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::parse(format!(
            "JSON error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::parse(format!("io error: {e}"))
    }
}
