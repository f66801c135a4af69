use thiserror::Error;

/// Errors raised by the measurement and certificate layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("unknown domain label `{0}`")]
    UnknownLabel(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("capacity exceeded in {what}: size {size} > cap {cap} (try heuristic mode)")]
    Capacity { what: String, size: u128, cap: u128 },

    #[error("undefined budget: {0}")]
    UndefinedBudget(String),

    #[error("{construction} rejected: {constraint}")]
    Rejected {
        construction: String,
        constraint: String,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn rejected(construction: &str, constraint: impl Into<String>) -> Self {
        Error::Rejected {
            construction: construction.to_string(),
            constraint: constraint.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
