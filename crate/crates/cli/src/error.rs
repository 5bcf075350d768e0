use std::path::PathBuf;

use dualcavity_core::CoreError;
use thiserror::Error;

/// Exit-code contract: 0 all-pass, 1 check failure, 2 configuration
/// error, 3 capability error.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("invalid config: {0}")]
    ConfigInvalid(String),

    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),

    #[error("cannot write {path}: {source}")]
    OutputWrite {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0} checks failed")]
    ChecksFailed(usize),

    #[error("capability limit: {0}")]
    Capability(CoreError),

    #[error(transparent)]
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::ConfigRead { .. }
            | CliError::ConfigParse { .. }
            | CliError::ConfigInvalid(_)
            | CliError::UnknownTolerance(_) => 2,
            CliError::Capability(_) => 3,
            CliError::OutputWrite { .. } | CliError::Core(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::TruncationTooSmall { .. } | CoreError::DimensionTooLarge { .. } => {
                CliError::Capability(err)
            }
            other => CliError::Core(other),
        }
    }
}
