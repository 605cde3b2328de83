use thiserror::Error;

/// Errors produced by mesh generation, assembly, solution and reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range (len {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mesh metadata missing: {0}")]
    MissingMetadata(&'static str),

    #[error("singular pivot in block {block}")]
    SingularPivot { block: usize },

    #[error("could not reach N = {target}; nearest achievable N = {nearest} (H = {h})")]
    TargetNotReached { target: usize, nearest: usize, h: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
