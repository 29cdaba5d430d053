use thiserror::Error;

/// Errors raised by the algebra, checkers and certificate builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polarization degree {0} is outside 1..=4")]
    DegreeOutOfRange(usize),
    #[error("scalars from different modes were mixed")]
    MixedModes,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("element is not skew under the involution")]
    NotSkew,
    #[error("map is not nilpotent")]
    NotNilpotent,
    #[error("{0} is not a supported prime (need a prime p with 5 <= p < 2^32)")]
    InvalidPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural check failed: {0}")]
    Structural(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
