use std::io;

/// Errors surfaced by the command-line layer, each mapped to a fixed
/// process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config keys, or parameter values (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Runtime or I/O failure during an otherwise valid run (exit 1).
    #[error("{0}")]
    Runtime(String),
    /// One or more verification checks failed (exit 3).
    #[error("verification failed: {failed} of {total} checks did not pass")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
            CliError::Verification { .. } => 3,
        }
    }
}

impl From<catbreeder_core::Error> for CliError {
    fn from(err: catbreeder_core::Error) -> Self {
        CliError::Runtime(err.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Runtime(err.to_string())
    }
}
