use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative element")]
    NegativeSqrt,
    #[error("valuation {0} cannot be halved in this exponent mode")]
    NonHalvableValuation(String),
    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeading(String),
    #[error("no exact square root in this field")]
    NoExactSqrt,
    #[error("operands live in different fields ({0} vs {1})")]
    ModeMismatch(String, String),
    #[error("rational exponent {0} is not allowed in Laurent mode")]
    RationalExponent(String),
    #[error("comparison undecided: operands agree below the known order {0}")]
    Indistinguishable(String),
    #[error("element is infinitely large; no standard part")]
    NotFinite,
    #[error("cannot raise known order from {from} to {to}")]
    PrecisionRaise { from: String, to: String },
    #[error("balls {outer} and {inner} are not nested")]
    NotNested { outer: usize, inner: usize },
    #[error("interval family lacks the finite intersection property")]
    FipFails,
    #[error("rho is not a valid gap bound for intervals {lo_index} and {hi_index}")]
    InvalidRho { lo_index: usize, hi_index: usize },
    #[error("endpoint values have the same strict sign")]
    SameSignEndpoints,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("empty input")]
    EmptyInput,
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = FieldError> = std::result::Result<T, E>;
