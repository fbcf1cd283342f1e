use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] qcolour_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 1 for internal failures, 2 for anything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qcolour_core::Error::Postcondition(_)) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) | CliError::Core(qcolour_core::Error::InvalidArgument(_)) => "invalid-argument",
            CliError::Core(qcolour_core::Error::Resource(_)) => "resource",
            CliError::Core(qcolour_core::Error::Postcondition(_)) => "internal",
            CliError::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
