use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("term {witness} is not divisible by {var}")]
    NotDivisible { var: String, witness: String },

    #[error("{0} has a nonzero constant term (not in the maximal ideal)")]
    NonProperElement(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("resolution is not minimal: unit entry {entry} at diff {diff}, row {row}, column {col}")]
    NonMinimalResolution {
        diff: usize,
        row: usize,
        col: usize,
        entry: String,
    },

    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("membership failure: {0}")]
    MembershipFailure(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("degree bound too small: {0}")]
    BoundTooSmall(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
