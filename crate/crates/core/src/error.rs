use thiserror::Error;

/// Errors surfaced by parsing, validation and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("labeling has {got} labels but the tree has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },

    #[error("instance of size {size} exceeds the oracle cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tree is not preprocessed: {0}")]
    NotPreprocessed(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
