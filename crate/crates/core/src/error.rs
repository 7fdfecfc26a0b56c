use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic must be at least 5, got {0}")]
    PrimeTooSmall(u64),
    #[error("prime {0} exceeds 2^31 - 1")]
    PrimeTooLarge(u64),
    #[error("non-invertible element")]
    NonInvertible,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("subspace is not closed under the bracket: [v{i}, v{j}] leaves the span")]
    NotClosed { i: usize, j: usize },
    #[error("vector does not lie in the subalgebra span")]
    NotInSpan,
    #[error("two-cochain is not a cocycle")]
    NotCocycle,
    #[error("{context}: construction produced dimension {got}, expected {expected}")]
    DimensionFormula {
        context: String,
        got: usize,
        expected: usize,
    },
    #[error("divisibility precondition violated: {0}")]
    Divisibility(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("extension verification failed: {0}")]
    ExtensionAxiom(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
