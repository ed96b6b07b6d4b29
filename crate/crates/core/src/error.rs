use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant names the clause that failed so the CLI can report it
/// verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {0} is outside the supported range")]
    FieldTooLarge(u64),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("element {0} is not primitive (its order is smaller than q-1)")]
    NotPrimitive(u32),

    #[error("element {element} is not in F_{q}")]
    ElementOutOfRange { element: u32, q: u32 },

    #[error("zero has no {0}")]
    ZeroElement(&'static str),

    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: u64, n: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid error pattern: {0}")]
    InvalidPattern(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("lemma not applicable: {0}")]
    NotApplicable(String),

    #[error("search too large: {count} candidates exceed the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
