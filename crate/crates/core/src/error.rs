use thiserror::Error;

/// Errors raised by the library. [`Error::is_internal`] separates broken
/// invariants of the computation from bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("validation failed for `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("division by the zero function")]
    DivisionByZero,

    #[error("substitution s -> a*s + b needs a != 0")]
    DegenerateSubstitution,

    #[error("evaluation at the pole {0}")]
    EvaluationAtPole(String),

    #[error("denominator has the non-linear factor {0}")]
    NonLinearFactor(String),

    #[error("pole of order {order} at {at}; residue needs a simple pole")]
    HigherOrderPole { at: String, order: usize },

    #[error("singular intersection matrix")]
    SingularSystem,

    #[error("multiplicities are not positive integers: {0}")]
    NonIntegralSolution(String),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("missing twisted entry Z^({0}) in strict mode")]
    MissingEntry(String),

    #[error("multiple pole regime: {0}")]
    MultiplePoleRegime(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
