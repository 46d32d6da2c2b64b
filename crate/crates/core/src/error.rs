use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be a positive integer")]
    ZeroInput,

    #[error("arithmetic overflow while computing {what} for n = {n}")]
    Overflow { what: &'static str, n: u128 },

    #[error("segment [{lo}, {hi}] holds {len} integers, limit is {max}")]
    SegmentTooLarge {
        lo: u64,
        hi: u64,
        len: u64,
        max: u64,
    },

    #[error("invalid range [{lo}, {hi}]: {reason}")]
    InvalidRange {
        lo: u64,
        hi: u64,
        reason: &'static str,
    },

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "checkpoint at {path} belongs to a different query (expected {expected}, found {found})"
    )]
    CheckpointMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("malformed checkpoint {path}: {reason}")]
    CheckpointFormat { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("output error: {0}")]
    Output(#[from] std::io::Error),

    #[error("worker thread panicked")]
    WorkerPanic,
}

impl Error {
    pub(crate) fn overflow(what: &'static str, n: impl Into<u128>) -> Self {
        Error::Overflow { what, n: n.into() }
    }
}
