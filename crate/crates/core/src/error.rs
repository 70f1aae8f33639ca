use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular modulus")]
    SingularModulus,
    #[error("not a symplectic bottom row")]
    NotBottomPair,
    #[error("modulus not coprime")]
    NotCoprime,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("matrix is not in GO2(Z)")]
    NotSimilitude,
    #[error("zero Gaussian integer")]
    ZeroGaussian,
    #[error("pole")]
    Pole,
    #[error("{0} is not 1 or a fundamental discriminant")]
    NotFundamental(i64),
    #[error("underdetermined fit: {points} points for degree {degree}")]
    Underdetermined { points: usize, degree: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
