//! Error type shared by all modules.

use std::fmt;

/// Errors reported by closure, code, and witness computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested modulus is not a prime.
    NotPrime(u64),
    /// The prime exceeds the bound that keeps products in 64 bits.
    FieldTooLarge(u64),
    /// A weight outside `[0, n]` was supplied.
    InvalidWeight { weight: usize, n: usize },
    /// An operation would materialize `2^n`-scale data beyond the cap.
    SizeCapExceeded { n: usize, cap: usize },
    /// An interval does not match the supplied modulus or range.
    InvalidInterval(String),
    /// Vector or point dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A theorem's hypothesis does not hold for the given parameters.
    PreconditionUnmet(String),
    /// A weight pair violates the congruence/ordering required of it.
    InvalidPair(String),
    /// A dimension is not of the shape `(k+1)p^r - 1` required here.
    InvalidShape(String),
    /// The degree of the zero polynomial was requested.
    UndefinedDegree,
    /// A parameter failed validation.
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldTooLarge(p) => write!(f, "prime {p} exceeds the 46337 bound"),
            Error::InvalidWeight { weight, n } => {
                write!(f, "weight {weight} outside [0, {n}]")
            }
            Error::SizeCapExceeded { n, cap } => {
                write!(f, "dimension {n} exceeds enumeration cap {cap}")
            }
            Error::InvalidInterval(msg) => write!(f, "invalid interval: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::PreconditionUnmet(msg) => write!(f, "precondition unmet: {msg}"),
            Error::InvalidPair(msg) => write!(f, "invalid pair: {msg}"),
            Error::InvalidShape(msg) => write!(f, "invalid shape: {msg}"),
            Error::UndefinedDegree => write!(f, "degree of the zero polynomial is undefined"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
