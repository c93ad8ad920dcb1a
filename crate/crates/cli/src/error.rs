use std::io;

/// Errors surfaced by the command line; each maps to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments, bad configuration or an unusable output path.
    #[error("{0}")]
    Usage(String),
    /// A computation that could not be completed.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<hecke_core::Error> for CliError {
    fn from(e: hecke_core::Error) -> Self {
        match e {
            hecke_core::Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
