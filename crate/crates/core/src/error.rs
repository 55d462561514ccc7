use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: t^{left} vs t^{right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("element is not a unit (constant term is zero)")]
    NotAUnit,

    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("consistency check failed: {0}")]
    ConsistencyCheck(String),

    #[error("resolution data lacks classes for motivic computations")]
    MissingClasses,

    #[error("coefficient is not integral: {0}")]
    NonIntegral(String),

    #[error("inconsistent fit for prime {prime}: coefficient of t^{degree} is {value}, expected 0")]
    InconsistentFit {
        prime: u64,
        degree: usize,
        value: String,
    },

    #[error("interpolation failure: {0}")]
    InterpolationFailure(String),

    #[error("indeterminate form: {0}")]
    IndeterminateForm(String),

    #[error("denominator does not split into rational linear factors")]
    NonLinearDenominator,
}

/// A JSON syntax or shape error, keeping its position.
pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}
