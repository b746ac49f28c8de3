use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("precision loss: {0}")]
    Precision(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Resource(_) => ErrorKind::Resource,
            Error::Precision(_) | Error::InvariantViolation(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
