use std::fmt;

/// Failure of a CLI run, split by the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or malformed input, or data the library rejects.
    Input(String),
    /// A result the tool produced failed its own re-check.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gitplane::Error> for CliError {
    fn from(e: gitplane::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
