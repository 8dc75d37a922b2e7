use std::io;

use thiserror::Error;

/// Errors produced by the decomposition engines, generators and file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("dimension {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("qubit count {0} is out of range")]
    QubitCount(usize),

    #[error("{method} is limited to n <= {limit} (got n = {n})")]
    GuardExceeded {
        method: &'static str,
        limit: usize,
        n: usize,
    },

    #[error("invalid Pauli label {0:?}")]
    InvalidLabel(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported Matrix Market header: {0}")]
    Unsupported(String),

    #[error("dimension 1 block has no cumulative weights")]
    ScalarBlock,

    #[error("duplicate Pauli string {0}")]
    DuplicateTerm(String),

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for failures of the underlying reader/writer rather than of the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
