use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("variable count {0} outside supported range 1..=64")]
    TooManyVariables(usize),

    #[error("variable index x{index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid segment: {0}")]
    InvalidSegment(String),

    #[error("{what} refused: {size} exceeds the configured limit {limit}")]
    LimitExceeded { what: &'static str, size: usize, limit: usize },

    #[error("Alexander dual of the zero ideal is undefined")]
    DualOfZeroIdeal,

    #[error("certificate construction failed: {0}")]
    Construction(String),

    #[error("unresolved: no two-element radical generator found for the dual ideal\n{log}")]
    Unresolved { log: String },
}

pub type Result<T> = std::result::Result<T, Error>;
