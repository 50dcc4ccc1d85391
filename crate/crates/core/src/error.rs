//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix must have dimension >= 1")]
    EmptyMatrix,
    #[error("storage length mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("entries must be finite")]
    NonFinite,
    #[error("diagonal of a Hermitian matrix must be real")]
    NonHermitianDiagonal,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("QL iteration failed to converge within {max_sweeps} sweeps")]
    QlNoConvergence { max_sweeps: usize },
    #[error("matrix is exactly singular at pivot {pivot}")]
    Singular { pivot: usize },
    #[error("inverse iteration did not reach tolerance; best residual {residual:.3e}")]
    NoConvergence { residual: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SecularError {
    #[error("evaluation point within {distance:.3e} of pole {pole_index} (i*lambda_j)")]
    PoleProximity { pole_index: usize, distance: f64 },
    #[error("no sign change while bracketing the zero in interval {interval}")]
    NoBracket { interval: isize },
    #[error("interval {interval} has a degenerate endpoint weight")]
    DegenerateInterval { interval: isize },
    #[error("root count mismatch: expected {expected}, assembled {actual}")]
    RootCount { expected: usize, actual: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SdeError {
    #[error("initial data must be strictly positive and increasing")]
    BadInitialData,
    #[error("step size and horizon must be positive")]
    BadStep,
    #[error("particle collision at t = {t:.6}; substep floor reached")]
    StepFailure { t: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("coincident eigenvalues make a generator coefficient singular (sites {i}, {j})")]
    SingularCoefficient { i: usize, j: usize },
    #[error("stability bound violated: dt = {dt:.3e} exceeds {max_dt:.3e}")]
    UnstableStep { dt: f64, max_dt: f64 },
    #[error("anti-symmetric mode requires strictly positive site coordinates")]
    NonPositiveSite,
    #[error("value table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("Stieltjes transform requires Im z > 0")]
    UpperHalfPlane,
    #[error("vector must be unit to 1e-12 (norm was {norm})")]
    NotUnit { norm: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Secular(#[from] SecularError),
}
