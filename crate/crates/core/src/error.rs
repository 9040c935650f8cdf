use crate::Cplx;
use thiserror::Error;

pub type Result<T, E = DbError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DbError {
    #[error("|Im z| = {im} exceeds the overflow guard {guard}")]
    OverflowGuard { im: f64, guard: f64 },
    #[error("removable singularity violated at w = {w}: residual {residual:e}")]
    RemovabilityViolation { w: Cplx, residual: f64 },
    #[error("empty sample set")]
    EmptySampleSet,
    #[error("inner product did not converge after {levels} refinements (last change {change:e})")]
    NonConvergence { levels: usize, change: f64 },
    #[error("scan step {step} is too coarse near x = {x}")]
    StepTooCoarse { x: f64, step: f64 },
    #[error("w = {w} is a spectral point: |s(w)| = {modulus:e}")]
    SpectralPoint { w: Cplx, modulus: f64 },
    #[error("functional level does not match the extension")]
    LevelMismatch,
    #[error("degenerate denominator |d| = {value:e}")]
    DegenerateDenominator { value: f64 },
    #[error("empty dictionary")]
    EmptyDictionary,
    #[error("Gram matrix condition number {condition:e} exceeds 1e12")]
    IllConditioned { condition: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl DbError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        DbError::InvalidParameter(msg.into())
    }
}
