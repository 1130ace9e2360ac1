use thiserror::Error;

/// Errors raised anywhere in the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected} items, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("value {value} lies outside the domain [{lo}, {hi}] of {function}")]
    DomainViolation { function: String, value: f64, lo: f64, hi: f64 },

    #[error("Kraus operators have inconsistent shapes: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },

    #[error("map is not unital: ||sum V^* V - I||_F = {defect:.3e}")]
    NotUnital { defect: f64 },

    #[error("matrix is not an isometry: ||V^* V - I||_F = {defect:.3e}")]
    NotIsometry { defect: f64 },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("bad parameter for `{function}`: {reason}")]
    BadParameter { function: String, reason: String },

    #[error("function `{0}` has no derivative")]
    MissingDerivative(String),

    #[error("function `{function}` is not positive at {at}")]
    NonPositiveFunction { function: String, at: f64 },

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("hypotheses of {claim} not met: {}", failed.join("; "))]
    HypothesisViolation { claim: String, failed: Vec<String> },

    #[error("instance is malformed: {0}")]
    MalformedInstance(String),

    #[error("random map generation failed after {retries} retries (condition number {condition:.3e})")]
    GenerationFailure { retries: usize, condition: f64 },

    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("JSON error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
