use std::path::PathBuf;

use thiserror::Error;

/// Failures of the command-line tool, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    AuditViolation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: record {record}: {message}")]
    Parse {
        path: PathBuf,
        record: usize,
        message: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::AuditViolation(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<multimodal_core::Error> for CliError {
    fn from(e: multimodal_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
