use thiserror::Error;

/// Errors surfaced by the engine.
///
/// `Size` is the resource-guard class (the CLI maps it to exit code 3),
/// `Input` covers malformed arguments, `Structural` covers precondition
/// violations on otherwise well-typed values, and `Internal` flags
/// consistency checks that are never expected to fire on engine-driven
/// inputs.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("size guard exceeded: {0}")]
    Size(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn size(msg: impl Into<String>) -> Self {
        Error::Size(msg.into())
    }
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
