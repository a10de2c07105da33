use thiserror::Error;

use crate::rings::RingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingId, right: RingId },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown ring selector `{0}`")]
    UnknownRing(String),

    #[error("operation not available over the inexact ring `real`")]
    InexactRing,

    #[error("tuple too short: need at least {min} entries, got {len}")]
    TooShort { min: usize, len: usize },

    #[error("tuple is not a lambda-quiddity")]
    NotQuiddity,

    #[error("entry {index} is not 1 or -1")]
    NotUnit { index: usize },

    #[error("entry {index} is not 0")]
    NotZero { index: usize },

    #[error("index {index} out of range for tuple of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search space of {estimate} nodes exceeds ceiling {ceiling}")]
    CeilingExceeded { estimate: u128, ceiling: u128 },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
