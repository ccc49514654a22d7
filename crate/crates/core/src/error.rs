use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ramification set must contain 2")]
    MissingTwo,
    #[error("ramification set lists {0} more than once")]
    RepeatedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not an S-integer (denominator divisible by {prime})")]
    NotSInteger { value: String, prime: u64 },
    #[error("zero input rejected")]
    Zero,
    #[error("{0} is congruent to 2 or 3 mod 4")]
    NotDiscriminant(String),
    #[error("{0} is not a square")]
    NotSquare(String),
    #[error("{0} is a square")]
    IsSquare(String),
    #[error("{what} shares the prime {prime} with S")]
    NotCoprimeToS { what: &'static str, prime: u64 },
    #[error("prime {0} is not supported on this code path")]
    UnsupportedPrime(u64),
    #[error("pole or zero collision at {0}")]
    Pole(String),
    #[error("inadmissible contour: {0}")]
    Contour(String),
    #[error("quadrature did not converge (achieved error {achieved:e})")]
    Quadrature { achieved: f64 },
    #[error("unsupported parity configuration [{case}]: {detail}")]
    Parity { case: &'static str, detail: String },
    #[error("depth {depth} is insufficient for local constancy")]
    Depth { depth: i64 },
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("tolerance {wanted:e} not certified (achieved {achieved:e})")]
    Uncertified { achieved: f64, wanted: f64 },
    #[error("value too large: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
