//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("degenerate input: all generators are zero")]
    DegenerateMonoid,

    #[error("entry magnitude exceeds the supported exact range")]
    Overflow,

    #[error("characteristic {0} is not prime")]
    NotPrime(u64),

    #[error("point is not contained in gp(Q)")]
    NotInGroup,

    #[error("point is not a hole of the monoid")]
    NotAHole,

    #[error("box too small: certification failed at radius {radius}, retry with --box {suggested}")]
    BoxTooSmall { radius: i64, suggested: i64 },

    #[error("inconsistent face lattice: {0}")]
    FaceLattice(String),

    #[error("theorem violation (this is a bug): {0}")]
    TheoremViolation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown builtin example `{0}`")]
    UnknownBuiltin(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
