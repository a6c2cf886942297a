use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A closed-form count was requested outside the range where it is stated.
    #[error("{formula}: {reason}")]
    Domain {
        formula: &'static str,
        reason: String,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("vectors of mixed degree: expected {expected}, found {found}")]
    MixedDegree { expected: usize, found: usize },

    #[error("exponent matrix has rank {rank}, expected full column rank {cols}")]
    RankDeficient { rank: usize, cols: usize },

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(formula: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        formula,
        reason: reason.into(),
    }
}
