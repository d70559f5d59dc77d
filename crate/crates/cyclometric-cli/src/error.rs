//! Error type for the command-line layer and its exit-code mapping.

use std::fmt;

use cyclometric_core::Error as CoreError;

/// Anything that can go wrong between parsing flags and printing a report.
#[derive(Debug)]
pub enum CliError {
    /// A computation inside `cyclometric-core` failed.
    Core(CoreError),
    /// Malformed input: bad flag combination, unparseable element or rational.
    Usage(String),
    /// Reading an `@file` element argument failed.
    Io(std::io::Error),
    /// Malformed JSON in an element argument.
    Json(serde_json::Error),
}

impl CliError {
    /// Process exit code for this error.
    ///
    /// Validation and usage problems exit 1; hitting the evaluation budget or
    /// exhausting a bounded search exits 2 so scripts can tell "you asked for
    /// something too big" apart from "you asked for something malformed".
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::BudgetExceeded { .. })
            | CliError::Core(CoreError::SearchExhausted { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "reading element file: {e}"),
            CliError::Json(e) => write!(f, "parsing element JSON: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}
