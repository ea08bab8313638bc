use thiserror::Error;

/// Errors raised by the scale-complex computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The universe is too large for exhaustive enumeration.
    #[error("capacity error: {n_pitches} pitch classes exceeds the limit of {limit}")]
    Capacity { n_pitches: u32, limit: u32 },

    /// A collapse was requested on a pair that is no longer free.
    #[error("state error: {0}")]
    State(String),

    /// The operation is only defined for the default twelve-tone universe.
    #[error("unsupported universe: {0}")]
    UnsupportedUniverse(String),

    /// An internal consistency check failed.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
