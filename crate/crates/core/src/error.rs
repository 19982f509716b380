use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field of order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),

    #[error("operation is undefined for constant polynomials")]
    ConstantPolynomial,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    /// A checked mathematical statement failed. Carries enough detail to
    /// reproduce the failing instance.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
