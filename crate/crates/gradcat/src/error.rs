use thiserror::Error;

/// Failures that are not law violations.
///
/// Law violations are reported through [`crate::CheckReport`]; these variants
/// cover malformed input, ill-typed operations and exhausted budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("composition error: {0}")]
    Composition(String),
    #[error("reindex error: {0}")]
    Reindex(String),
    #[error("budget exceeded: {what} needs more than {limit}")]
    Budget { what: String, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
