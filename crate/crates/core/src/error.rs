use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: i64,
        cap: i64,
    },

    #[error("shrink precondition violated: {0}")]
    ShrinkPrecondition(String),

    #[error("recurrence verification failed on held-out term {index}")]
    HeldOutMismatch { index: usize },

    #[error("recurrence has zero constant term and cannot be run backward")]
    ZeroConstantTerm,

    #[error("backward step at n = {n} produced a non-integer value")]
    NonIntegral { n: i64 },

    #[error("inexact division: {0}")]
    InexactDivision(String),
}
