use std::path::PathBuf;

use princ_core::construction::ConstructionError;
use princ_core::io::IoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error("{0}")]
    Rejected(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Rejected(_) => 2,
            CliError::Parse {
                source: IoError::Json(_),
                ..
            } => 3,
            CliError::Parse { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::VerificationFailed(_)
            | ConstructionError::Lattice(_)
            | ConstructionError::Coloring(_)
            | ConstructionError::Order(_)
            | ConstructionError::PreconditionViolated { .. }
            | ConstructionError::MissingTop => CliError::Verification(e.to_string()),
            ConstructionError::NoZero | ConstructionError::NotDirected => CliError::Rejected(
                format!("{e}; the input must be a directed ordered set with a least element"),
            ),
            _ => CliError::Rejected(e.to_string()),
        }
    }
}
