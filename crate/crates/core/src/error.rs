use thiserror::Error;

/// Errors raised by the algebra, the loaders and the expression front end.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("incompatible carriers: {0}")]
    Incompatible(String),

    #[error("syntax error at line {line}, column {column}: found {found}, expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: String,
    },

    #[error("unbound variable {0}")]
    Unbound(String),

    #[error("set {set:?}, entry {index}: {message}")]
    Load {
        set: String,
        index: String,
        message: String,
    },

    #[error("invalid set-definition file: {0}")]
    Format(String),

    #[error("instance error: {0}")]
    Instance(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
