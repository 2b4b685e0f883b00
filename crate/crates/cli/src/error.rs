use std::io;

use thiserror::Error;

/// Errors surfaced by the CLI, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(mazer_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<mazer_core::Error> for CliError {
    fn from(err: mazer_core::Error) -> Self {
        match err {
            mazer_core::Error::InvalidParameter { .. } => CliError::Usage(err.to_string()),
            _ => CliError::Numerical(err),
        }
    }
}
