use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is not below 2^61")]
    ModulusTooLarge(u64),

    #[error("operands live in different fields (p = {left} and p = {right})")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Raised when a generator is requested for a matrix whose class does not
    /// act transitively on projective space.
    #[error("characteristic polynomial {poly} is not projectively primitive over F_{p}")]
    NotProjectivelyPrimitive { p: u64, poly: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{0} is outside the supported factorization range (below 2^96)")]
    UnsupportedRange(u128),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistency(_) => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
