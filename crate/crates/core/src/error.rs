use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the operation's domain (bad index, singular
    /// matrix, coincident interpolation points, mismatched qubit counts).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical routine failed to converge or produced a result that
    /// does not meet its accuracy contract.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The request exceeds a documented size guard.
    #[error("resource error: {0}")]
    Resource(String),
    /// A document could not be parsed or violates its schema.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
