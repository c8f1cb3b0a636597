use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("degree cap exceeded: need degree {needed}, cap is {cap}")]
    DegreeCap { needed: u128, cap: u64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid rational map: {0}")]
    InvalidMap(String),
    #[error("not irreducible over Q: {0}")]
    NotIrreducible(String),
    #[error("divisor is not effective")]
    NonEffectiveDivisor,
    #[error("prime {0} is a place of bad reduction")]
    BadReduction(u64),
    #[error("infinite local height: the two points coincide")]
    InfiniteLocalHeight,
    #[error("root finder did not reach tolerance {requested:e}; achieved bound {achieved:e}")]
    RootFinding { requested: f64, achieved: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
