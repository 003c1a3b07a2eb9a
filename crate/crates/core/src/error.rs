use thiserror::Error;

/// Errors raised by the spectral toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid torus metric: {0}")]
    InvalidMetric(String),

    #[error("grid of {n} points per axis cannot hold bandlimit {bandlimit} (need at least {})", 2 * .bandlimit + 1)]
    GridTooSmall { n: usize, bandlimit: usize },

    #[error("coefficient count {got} does not match bandlimit {bandlimit} (expected {expected})")]
    CoefficientCount { bandlimit: usize, expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("negative power {s} applied with a nonzero zero mode")]
    NegativePowerAtZeroMode { s: f64 },

    #[error("Wirtinger derivative of order ({a},{b}) is undefined for p = {p}")]
    UndefinedDerivative { a: u32, b: u32, p: f64 },

    #[error("derivative of order ({a},{b}) has no limit at z = 0 for p = {p}")]
    DomainError { a: u32, b: u32, p: f64 },

    #[error("invalid nonlinearity power p = {0} (need p >= 2)")]
    InvalidPower(f64),

    #[error("Lebesgue exponent {0} outside the admissible range")]
    InvalidLebesgueExponent(f64),

    #[error("dyadic index {0} is not a power of two")]
    NotDyadic(u64),

    #[error("time grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Picard iteration did not converge after {max_iter} iterations (last ratio {last_ratio})")]
    NoConvergence { max_iter: usize, last_ratio: f64 },

    #[error("field file: {0}")]
    FieldFormat(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
