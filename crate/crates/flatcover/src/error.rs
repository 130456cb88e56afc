use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ambient dimension r={r}: must lie in 1..={cap}")]
    InvalidDimension { r: u32, cap: u32 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("search budget exceeded: {budget} membership tests")]
    BudgetExceeded { budget: u64 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("malformed flatset data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
