use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] novikov_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed job file: {0}")]
    Job(#[from] serde_json::Error),
    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 3 for resource caps, 2 for everything the user can fix in the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_cap() => 3,
            _ => 2,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<novikov_core::PresentationError> for CliError {
    fn from(e: novikov_core::PresentationError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<novikov_core::ComplexError> for CliError {
    fn from(e: novikov_core::ComplexError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<novikov_core::AlgebraError> for CliError {
    fn from(e: novikov_core::AlgebraError) -> Self {
        CliError::Core(e.into())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
