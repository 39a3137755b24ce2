use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown subsystem `{0}`")]
    UnknownSubsystem(String),

    #[error("duplicate subsystem label `{0}`")]
    DuplicateSubsystem(String),

    #[error("matrix is not Hermitian (max |m - m^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (|tr - 1| = {0:e})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("state vector is not normalized (|norm - 1| = {0:e})")]
    NotNormalized(f64),

    #[error("coherent-state truncation tail {tail:e} exceeds {tolerance:e} at n_max = {n_max}; increase n_max")]
    TruncationTail { tail: f64, tolerance: f64, n_max: usize },

    #[error("probability out of range: {0}")]
    InvalidProbability(f64),

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("series does not cover [0, {tau}]: {reason}")]
    Coverage { tau: f64, reason: String },

    #[error("global state lost purity at t = {t}: tr(rho^2) = {purity}")]
    PurityViolation { t: f64, purity: f64 },

    #[error("numerical convergence check failed: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
