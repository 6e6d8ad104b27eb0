use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: BigInt, modulus: BigInt },

    #[error("cannot expand {numerator}/{denominator}: need numerator > denominator >= 1, coprime")]
    InvalidFraction {
        numerator: BigInt,
        denominator: BigInt,
    },

    #[error("continued fraction entries must be at least 2, got {0}")]
    InvalidContinuedFraction(BigInt),

    #[error("multiplicities {0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),

    #[error("invalid multiplicity {0}")]
    InvalidMultiplicity(BigInt),

    #[error("no fiber of order {0}")]
    NoSuchFiber(BigInt),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("lattice is not negative definite")]
    NotNegativeDefinite,

    #[error("lattice is not unimodular (det = {0})")]
    NotUnimodular(BigInt),

    #[error("the fiber is the unknot in S^3; no surgery on it has infinite order")]
    UnknotInS3,

    #[error("polynomial is not a palindrome of even degree")]
    NotSymmetric,

    #[error("coefficient {0} lies outside {{-1, 0, 1}}")]
    CoefficientOutOfRange(BigInt),

    #[error("{0} is too large for this computation")]
    TooLarge(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that can only come from a bug, never from bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
