use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse problem file: {0}")]
    Parse(String),

    #[error(transparent)]
    Core(#[from] srg_core::Error),

    #[error("{0}")]
    NotApplicable(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(srg_core::Error::UnboundedRegion(_)) => 4,
            CliError::Core(_) | CliError::NotApplicable(_) => 3,
            CliError::Io { .. } => 5,
        }
    }
}
