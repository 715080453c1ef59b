use thiserror::Error;

/// Errors reported by the solver stack.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial shape not supported by this operation: {0}")]
    DegenerateShape(String),
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("empty interval")]
    EmptyInterval,
    #[error("region is unbounded")]
    UnboundedRegion,
    #[error("polygon area is at least 1/2")]
    TooFat,
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooHigh(u32),
    #[error("leading y-slice is identically zero")]
    ZeroLeadingSlice,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not homogeneous translatable")]
    NotTranslatable,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("not a nonzero binary cubic form")]
    NotCubicForm,
    #[error("polynomial has a root in the segment")]
    NotPositive,
    #[error("enumeration exceeds the point cap")]
    TooLarge,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("coefficients must be integers")]
    NonIntegerCoefficients,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
