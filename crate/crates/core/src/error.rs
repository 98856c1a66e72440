//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A threshold search could not bracket the target crossing.
    /// The message carries the probe trace for diagnosis.
    #[error("bisection failed to bracket the threshold: {0}")]
    Bracket(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for `Error::Parameter` with a formatted message.
pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
