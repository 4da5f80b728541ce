use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 251")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("composition of two arity-0 maps has negative arity")]
    NegativeArity,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra {0} is not associative")]
    NotAssociative(&'static str),
    #[error("map does not take values in the A-block")]
    NotInL,
    #[error("element has a nonzero AA-component; expected a cocycle-shaped element")]
    NotCocycleShaped,
    #[error("operation requires characteristic 0 or an odd prime, got characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("ad_beta is not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("A has nonzero multiplication; abelian specialization needs m_A = 0")]
    NonZeroMultiplication,
    #[error("cocycle is invalid: {0}")]
    InvalidCocycle(String),
    #[error("vector is not in the image of the inclusion: {0}")]
    NotInImage(String),
    #[error("invalid section: p o s != id")]
    InvalidSection,
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("candidate space of size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
