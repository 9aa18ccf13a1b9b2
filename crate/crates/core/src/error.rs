use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown indeterminate {0:?}")]
    UnknownIndeterminate(String),
    #[error("indeterminate mismatch: polynomial is in {have}, asked to substitute {want}")]
    IndeterminateMismatch { have: String, want: String },
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("series division: {0}")]
    SeriesDivision(String),
    #[error("index {index} beyond series order {order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("degree {0} exceeds integrand cap {1}")]
    DegreeCap(usize, usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("coefficient denominator divisible by p = {0}")]
    DenominatorDivisibleByP(u64),
    #[error("zero has infinite valuation")]
    ZeroValuation,
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("grid exceeds caps: {0}")]
    GridCap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
