use thiserror::Error;

/// Errors raised by the library. Every variant maps onto the CLI's exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not divisible by {p}: coefficient at index {index} is a {p}-adic unit")]
    NotDivisible { p: u64, index: i64 },

    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),

    #[error("unsupported module: {0}")]
    UnsupportedModule(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("not approximately idempotent mod {p}^{n}: coefficient of c_{index} has valuation {valuation}")]
    NotApproxIdempotent {
        p: u64,
        n: u32,
        index: u64,
        valuation: i64,
    },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("falsified: {0}")]
    Falsified(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
