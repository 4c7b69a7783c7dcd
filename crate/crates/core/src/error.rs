use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no fundamental discriminant in the window ({lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("{0} is not a positive squarefree integer")]
    NotSquarefree(u64),

    #[error("duplicate set member {0}")]
    DuplicateMember(u64),

    #[error("resonator coefficient for p = {prime} is {value}; |a_p| must be below 1")]
    CoefficientOutOfRange { prime: u64, value: f64 },

    #[error("resonator weight vanishes on every discriminant in the window")]
    DegenerateWeights,

    #[error("operation requires a {expected} resonator")]
    WrongVariant { expected: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
