use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("letter '{letter}' is outside the alphabet of size {alphabet}")]
    UnknownLetter { letter: String, alphabet: usize },
    #[error("operation needs a non-empty forest")]
    EmptyForest,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("semigroup sum of {0} and {1} is not defined")]
    UndefinedSum(String, String),
    #[error("time {0} lies outside the path domain")]
    OutOfDomain(String),
    #[error("no value available at (s, t) = ({s}, {t}) on the grid")]
    Resolution { s: String, t: String },
    #[error("Chen residual {residual:e} exceeds tolerance {tolerance:e}")]
    ChenResidual { residual: f64, tolerance: f64 },
    #[error("gamma must lie in (0, 1], got {0}")]
    Gamma(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
