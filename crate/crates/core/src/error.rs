use thiserror::Error;

/// Errors reported by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("shape mismatch: {0}")]
    SpecMismatch(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("arithmetic overflow in {0}")]
    ArithmeticOverflow(&'static str),
    #[error("{0} is not a prime")]
    InvalidPrime(i64),
    #[error("premise violated: {0}")]
    PremiseViolation(String),
    #[error("capacity exceeded: {what} needs {needed} points, cap is {cap}")]
    CapacityExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },
    #[error("structure check ({check}) failed at point {point}: {detail}")]
    StructureViolation {
        check: char,
        point: usize,
        detail: String,
    },
    #[error("support is not connected")]
    ConnectedRequired,
    #[error("interval classification contradicted at: {0}")]
    LemmaViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("not a subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, TileError>;
