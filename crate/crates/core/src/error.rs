use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("partial quotient at index {index} must be at least 1, got {value}")]
    InvalidQuotient { index: usize, value: String },

    /// Arithmetic between `Q(sqrt d)` and `Q(sqrt d')` with `d != d'`.
    #[error("mixed radicands: sqrt({0}) and sqrt({1})")]
    MixedRadicand(String, String),

    #[error("operation requires an irrational value, got a rational one")]
    RationalInput,

    #[error("division by zero")]
    DivisionByZero,

    #[error("words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal cross-check failed; this is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// The brute-force oracle would need factors longer than the configured cap.
    #[error("resource cap exceeded: needed factors of length > {needed}, cap is {cap} symbols")]
    ResourceCap { needed: usize, cap: usize },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
