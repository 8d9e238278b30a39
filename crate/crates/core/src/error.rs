use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length {requested} exceeds the enumeration limit of {limit}")]
    EnumerationLimit { requested: usize, limit: usize },

    #[error("no qualifying burst of length {u} exists in a subblock of length {v}")]
    NoQualifyingPattern { v: usize, u: usize },

    #[error("bound right-hand side must be at least 1")]
    ZeroRhs,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
