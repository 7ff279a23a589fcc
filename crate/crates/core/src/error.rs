use thiserror::Error;

/// Errors raised by the algebra kernel and the geometry pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable table: {0}")]
    InvalidVarTable(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("negative exponent at offset {0}")]
    NegativeExponent(usize),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("zero polynomial in divisor list")]
    ZeroDivisor,
    #[error("incomplete assignment: no value for `{0}`")]
    IncompleteAssignment(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("factorization budget exceeded: {0}")]
    FactorBudget(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// True for errors caused by resource limits rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::FactorBudget(_))
    }
}
