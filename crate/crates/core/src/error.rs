use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter t = {t} lies outside the curve domain [{start}, {end}]")]
    Domain { t: f64, start: f64, end: f64 },

    #[error("curve is not regular at t = {t} (|C'| = {speed:e})")]
    Regularity { t: f64, speed: f64 },

    #[error("curvature vanishes at t = {t} (kappa = {curvature:e}); the evolute is undefined")]
    CurvatureSingularity { t: f64, curvature: f64 },

    #[error("clamped polygon has no exact float form: {0}")]
    NoExactFloatForm(String),

    #[error("dimension mismatch: expected {expected}D, found {found}D")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
