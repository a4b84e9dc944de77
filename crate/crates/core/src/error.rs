use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// The split matters for the CLI contract: `Input` and `Parse` map to exit
/// code 2, everything that represents a failed mathematical check is reported
/// through result types rather than errors and maps to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data (unknown curve, bad weight, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Document failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A configuration the verifier deliberately rejects rather than guesses
    /// at (e.g. a crossing of more than two weighted curves).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A bounded enumeration exceeded its limit; retry with a larger bound.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An internal cross-check failed. This aborts the computation: it means
    /// either corrupted input data or a bug, never a tolerable state.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
