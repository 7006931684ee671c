use std::io;

use kstrong_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for bad input, 1 for failures while computing or writing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Format { .. } => 2,
            CliError::Io { .. } | CliError::Csv(_) => 1,
            CliError::Core(e) => match e {
                CoreError::BasisSpec { .. }
                | CoreError::Basis(_)
                | CoreError::ExactModeUnsupported(_)
                | CoreError::InvalidGame(_)
                | CoreError::InvalidJointStrategy(_)
                | CoreError::OutOfRange { .. }
                | CoreError::InvalidArgument(_)
                | CoreError::UnknownPlayer(_)
                | CoreError::UnknownResource(_)
                | CoreError::LoadOutOfRange { .. }
                | CoreError::Number(_) => 2,
                _ => 1,
            },
        }
    }

    pub fn io(path: &std::path::Path, source: io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
