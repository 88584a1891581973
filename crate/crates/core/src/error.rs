use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// An arithmetical function could not be evaluated at `n`.
    #[error("evaluation of `{name}` failed at n = {n}: {reason}")]
    Evaluation { name: String, n: u64, reason: String },

    #[error("invalid function `{name}`: {reason}")]
    InvalidFunction { name: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
