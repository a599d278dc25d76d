use thiserror::Error;

/// Failures surfaced by every public operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// Arguments sit on a mathematical singularity (a pole, division by zero).
    #[error("domain error: {0}")]
    Domain(String),
    /// Text input (element serialization, numeric expressions) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
