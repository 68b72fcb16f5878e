use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be at least 1x1")]
    EmptyMatrix,

    #[error("matrix is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("direction is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("root is not bracketed: g({lo}) = {g_lo:e}, g({hi}) = {g_hi:e}")]
    BracketFailure {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("estimators coincide; a pair needs two distinct points")]
    DegeneratePair,

    #[error("sample set needs at least {required} points, got {found}")]
    TooFewSamples { required: usize, found: usize },

    #[error("samples have zero variance; no non-degenerate pair exists")]
    ZeroVariance,

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("all {restarts} Lloyd restarts failed")]
    AllRestartsFailed { restarts: usize },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
