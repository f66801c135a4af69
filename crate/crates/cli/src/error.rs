use thiserror::Error;

/// Command failures, each mapped to a process exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),

    #[error("capacity error: {0}")]
    Capacity(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => crate::EXIT_INPUT,
            CliError::Capacity(_) => crate::EXIT_CAPACITY,
        }
    }
}

impl From<mnc_core::Error> for CliError {
    fn from(e: mnc_core::Error) -> Self {
        if e.is_capacity() {
            CliError::Capacity(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
