use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is below 3")]
    ValueBelowThree(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("scale of an affine map must be nonzero")]
    ZeroScale,
    #[error("invalid scale {0}: must be nonzero")]
    InvalidMu(String),
    #[error("invalid prefix {prefix:?}: {reason}")]
    InvalidPrefix { prefix: String, reason: String },
    #[error("no real root of {poly} bracketed in [{lo}, {hi}]")]
    NoRootInBracket {
        poly: String,
        lo: String,
        hi: String,
    },
    #[error("assertion failed at n = {n}: {what}")]
    AssertionFailure { n: usize, what: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
