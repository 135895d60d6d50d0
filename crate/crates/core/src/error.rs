use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("relation {0} combines non-parallel paths")]
    NonParallel(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra is not split over its ground field: {0}")]
    NotSplit(String),
    #[error("splitting could not be decided: {0}")]
    SplitUndecided(String),
    #[error("algebra is not basic")]
    NotBasic,
    #[error("idempotent is not full (AeA != A)")]
    NotFull,
    #[error("operation requires positive characteristic")]
    CharZero,
    #[error("algebra is not local")]
    NotLocal,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("generator failed: {0}")]
    GeneratorFailed(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
