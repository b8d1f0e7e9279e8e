use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("fractional exponent alpha = {alpha} outside (0, 1]")]
    AlphaOutOfRange { alpha: f64 },

    #[error("alpha field evaluated to {alpha} outside (0, 1] at (x, t) = ({x}, {t})")]
    AlphaFieldOutOfRange { alpha: f64, x: f64, t: f64 },

    #[error("time level {level} is invalid (must be >= 1)")]
    InvalidLevel { level: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cell index {cell} out of range for {cells} cells")]
    CellOutOfRange { cell: usize, cells: usize },

    #[error("series did not converge within {max_terms} terms (argument outside supported range)")]
    SeriesNotConverged { max_terms: usize },

    #[error("implicit sweeps did not converge after {sweeps} sweeps (residual {residual:e})")]
    SweepsExhausted { sweeps: u32, residual: f64 },

    #[error("non-finite value detected at time level {level}")]
    NonFinite { level: usize },

    #[error("zero denominator: 1 - lambda dt^alpha / Gamma(2 - alpha) vanishes")]
    SingularTimeStep,

    #[error("energy identity violated at level {level}: relative defect {defect:e}")]
    EnergyIdentityViolated { level: usize, defect: f64 },

    #[error("CFL bound exceeded at level {level}: dt = {dt} > tau_max = {tau_max}")]
    CflExceeded { level: usize, dt: f64, tau_max: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable nonzero process exit code per error category, used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AlphaOutOfRange { .. }
            | Error::AlphaFieldOutOfRange { .. }
            | Error::InvalidLevel { .. }
            | Error::DimensionMismatch { .. }
            | Error::CellOutOfRange { .. }
            | Error::SingularTimeStep
            | Error::InvalidConfig(_)
            | Error::UnknownPreset(_) => 2,
            Error::NonFinite { .. } | Error::CflExceeded { .. } => 3,
            Error::SweepsExhausted { .. } | Error::SeriesNotConverged { .. } => 4,
            Error::EnergyIdentityViolated { .. } => 4,
            Error::Io(_) | Error::Json(_) => 5,
        }
    }
}
