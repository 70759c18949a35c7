use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("degree overflow: wedge of degrees {j} and {k} exceeds dimension {n}")]
    DegreeOverflow { j: usize, k: usize, n: usize },
    #[error("covector index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exponent p must satisfy p > 1, got {0}")]
    InvalidExponent(f64),
    #[error("frame dimension {0} exceeds the supported maximum 16")]
    DimensionTooLarge(usize),
    #[error("frame carries no weights")]
    MissingWeights,
    #[error("degree {k} out of range for dimension {n}")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error("invalid rank {rank} for root system type {label}")]
    InvalidRank { label: String, rank: usize },
    #[error("restricted case id must be 1..=4, got {0}")]
    BadRestrictedCase(usize),
    #[error("operation requires a split profile (n2 = 1), got n2 = {0}")]
    NonSplitProfile(usize),
    #[error("boundary identity requires {0}")]
    BoundaryIdentity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("sign precondition violated: 1/p - mu changes sign near r = {radius}")]
    SignChange { radius: f64 },

    #[error("complex validation failed: {0}")]
    InvalidComplex(String),
    #[error("cochain of degree {got} where degree {want} expected")]
    DegreeMismatch { got: usize, want: usize },
    #[error("input cochain is not exact (least-squares residual {residual:.3e})")]
    NotExact { residual: f64 },
    #[error("solver did not converge within {max_iter} iterations (last residual {residual:.3e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
