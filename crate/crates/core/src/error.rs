//! Error type shared by the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input (numbers, polynomials, identifiers).
    #[error("parse error: {0}")]
    Parse(String),
    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The group is valid but outside the supported family.
    #[error("unsupported group: {0}")]
    Unsupported(String),
    /// A computed object failed one of its checks.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
