use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Requested size exceeds what the simulator will allocate.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// Index out of range, dimension mismatch, missing parameter.
    #[error("structural error: {0}")]
    Structural(String),
    /// Caller violated an operation's preconditions.
    #[error("contract error: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical error: {message} (best estimate {estimate})")]
    Numerical { message: String, estimate: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
