use thiserror::Error;

/// Failures raised by the exact kernels and the checkers built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined resultant: zero polynomial input")]
    UndefinedResultant,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index {index} is not available (sequence covers {first}..={last})")]
    IndexOutOfRange { index: i64, first: i64, last: i64 },
    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("insufficient data: need at least {needed} windows, got {got}")]
    InsufficientWindows { needed: usize, got: usize },
    #[error("non-generic: {0}")]
    NonGeneric(String),
    #[error("non-generic prefix: extension not determined at index {index}")]
    SingularCofactor { index: i64 },
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("companion and Sylvester paths disagree at m = {m}")]
    PathDisagreement { m: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
