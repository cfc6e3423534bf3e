//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation, numerics, and I/O across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.0e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("matrix is not a quantum state: {reason}")]
    NotAState { reason: String },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds {tol:.0e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("observable has zero fluctuation under both states; optimal shift is undefined")]
    DegenerateShift,

    #[error("observable has vanishing second moments under both states")]
    DegenerateMoments,

    #[error("g(b, P, Q) denominator underflow: P, Q and b all near zero")]
    SingularPoint,

    #[error("P = 1 or Q = 1: stationary point undefined, evaluate g at b = -1 instead")]
    BoundaryCase,

    #[error("invalid reduction point: {0}")]
    InvalidReductionPoint(String),

    #[error("states are numerically identical; there is no signal to optimize")]
    NoSignal,

    #[error("truncation dimension {dim} too small: tail mass {tail:.3e} exceeds 1e-6")]
    TruncationTooSmall { dim: usize, tail: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error on '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn from_json(err: serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
