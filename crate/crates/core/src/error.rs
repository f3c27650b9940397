use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters p={p}, q={q}: need p > q >= 1")]
    InvalidParams { p: u32, q: u32 },
    #[error("element is not divisible by beta")]
    NotDivisible,
    #[error("digit string is not admissible: {0}")]
    NotAdmissible(String),
    #[error("expected a nonnegative value")]
    NegativeInput,
    #[error("not a beta-integer: {0}")]
    NotABetaInteger(String),
    #[error("{what} out of range: {value} not in [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("materialization budget exceeded: {0}")]
    TooLarge(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
