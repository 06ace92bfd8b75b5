use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("columns are not orthonormal (max deviation {residual:e})")]
    NotIsometry { residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("measurement has no operators")]
    EmptyMeasurement,

    #[error("operator {index} is not Hermitian (max asymmetry {asymmetry:e})")]
    OperatorNotHermitian { index: usize, asymmetry: f64 },

    #[error("operator {index} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { index: usize, min_eigenvalue: f64 },

    #[error("operators do not sum to the identity (max entry deviation {deviation:e})")]
    CompletenessViolated { deviation: f64 },

    #[error("measurement is not projective")]
    NotProjective,

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("mixed state carries no pure-state decomposition")]
    DecompositionMissing,

    #[error("bad outcome count {outcomes} for dimension {dim}")]
    BadOutcomeCount { dim: usize, outcomes: usize },

    #[error("bad ambient dimension {ambient} for dimension {dim}")]
    BadAmbientDim { dim: usize, ambient: usize },

    #[error("every outcome has zero probability in this state")]
    AllOutcomesNull,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),
}

pub type Result<T> = core::result::Result<T, Error>;
