use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sets live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: String, right: String },

    #[error("point {point} is not representable in space `{space}`: {reason}")]
    InvalidPoint {
        point: String,
        space: String,
        reason: String,
    },

    #[error("enumeration of {n} points exceeds the capacity limit of {max}")]
    Capacity { n: usize, max: usize },

    #[error("spatial index is stale: built over {indexed} members, set has {actual}")]
    StaleIndex { indexed: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid finite space: {0}")]
    InvalidSpace(String),

    #[error("action error at {point}: {reason}")]
    Action { point: String, reason: String },

    #[error("no samples survive; the quotient is degenerate ({0})")]
    DegenerateQuotient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
