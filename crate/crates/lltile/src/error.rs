use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label graph mismatch: {0}")]
    LabelMismatch(String),
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("seed vertex {0} lies outside the window")]
    SeedOutside(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity { what: what.into(), limit }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
