//! Command-line front end: scenario files, pipelines, the verification suite
//! and report rendering.

use std::fmt;

pub mod pipeline;
pub mod report;
pub mod scenario;
pub mod verify;

/// Exit code for malformed input, unknown names and class-cap violations.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for budget overruns, invariant failures and failed verification.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<torelli_core::Error> for CliError {
    fn from(e: torelli_core::Error) -> Self {
        if e.is_internal() {
            CliError::internal(e.to_string())
        } else {
            CliError::validation(e.to_string())
        }
    }
}
