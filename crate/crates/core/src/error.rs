use thiserror::Error;

/// Errors raised by the exact, archimedean and p-adic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Caller violated a documented precondition (bad order, even modulus, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// The generating function has a pole at the requested parameter.
    #[error("pole of generating function: {0}")]
    Pole(String),

    #[error("non-invertible series: constant term is zero")]
    NonInvertibleSeries,

    /// Argument outside the region where the defining series converges.
    #[error("domain error: {0}")]
    Domain(String),

    /// Series summation stopped at `terms` without reaching the tolerance.
    #[error("tolerance not met after {terms} terms (partial value {re} + {im}i)")]
    ToleranceNotMet { re: f64, im: f64, terms: usize },

    /// p-adic computation lost all requested digits.
    #[error("precision exhausted: only {surviving} p-adic digits survive")]
    PrecisionExhausted { surviving: i64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
