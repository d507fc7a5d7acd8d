use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// The variants are grouped by [`ErrorKind`] so front ends can map them onto
/// a fixed exit-code contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("not an automorphism: determinant {0} is not +1 or -1")]
    NotAutomorphism(String),
    #[error("non-isolated fixed set: A^{0} - I is singular (root-of-unity eigenvalue)")]
    NonIsolatedFixedSet(u64),
    #[error("group table error: {0}")]
    GroupTable(String),
    #[error("character table error: {0}")]
    CharacterTable(String),
    #[error("descriptor error: {0}")]
    Descriptor(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Argument,
    Capacity,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Capacity(_) => ErrorKind::Capacity,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Argument,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
