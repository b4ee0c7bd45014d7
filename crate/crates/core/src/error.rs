use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: &'static str, reason: String },

    #[error("graph of {requested} vertices exceeds the capacity of {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    Domain { vertex: usize, n: usize },

    #[error("operation requires a {expected} graph")]
    Family { expected: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed self-check: {0}")]
    Construction(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            field,
            reason: reason.into(),
        }
    }
}
