use thiserror::Error;

/// Errors raised by the certified numerics and the geometric layers built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bracket error: {0}")]
    Bracket(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unbounded sieve: {0}")]
    UnboundedSieve(String),
    #[error("(0,0) is not a slope")]
    ZeroSlope,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
