//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by constructors, loaders and evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation, such as inverting zero.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data violates a structural law; the message names a witness.
    #[error("validation failed: {0}")]
    Validation(String),
    /// The operation is not available for this input class.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two inputs that must agree do not.
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// A file or string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A local rewrite does not match the diagram at the requested site.
    #[error("pattern mismatch: {0}")]
    Pattern(String),
}

pub type Result<T> = std::result::Result<T, Error>;
