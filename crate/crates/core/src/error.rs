use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("field too large: {0} elements")]
    FieldTooLarge(u64),
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not the order of a subfield")]
    NotSubfield(u64),
    #[error("no embedding path between fields")]
    NoEmbedding,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("characteristic polynomial is reducible")]
    ReducibleCharPoly,
    #[error("polynomial is reducible")]
    ReduciblePoly,
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
