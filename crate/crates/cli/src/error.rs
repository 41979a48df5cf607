use std::fmt;

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameter values (exit 1).
    Usage(String),
    /// Unreadable or invalid input data (exit 2).
    Data(anyhow::Error),
    /// A verification found a mismatch (exit 3).
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(e) => write!(f, "error: {e:#}"),
            CliError::Mismatch(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<parhac_core::Error> for CliError {
    fn from(e: parhac_core::Error) -> Self {
        match e {
            parhac_core::Error::InvalidParameter(m) => CliError::Usage(m),
            other => CliError::Data(other.into()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
