use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("rank deficient: {0}")]
    Rank(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("unsupported query: {0}")]
    UnsupportedQuery(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("malformed candidate: {0}")]
    Candidate(String),
    #[error("cannot reduce: {0}")]
    Reduction(String),
    #[error("degree oracle failed: {0}")]
    Oracle(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
