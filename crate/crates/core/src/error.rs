use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group size: {0}")]
    InvalidSize(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("group has no generator named `{0}`")]
    MissingGenerator(char),

    #[error("ring elements belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("operation requires S4, got {0}")]
    NotS4(String),

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("exponent {0} too large")]
    ExponentOverflow(String),

    #[error("modulus mismatch")]
    ModulusMismatch,

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("invalid rule parameter: {0}")]
    InvalidRule(String),

    #[error("{0} is not a group determinant of S4")]
    NotInSet(BigInt),

    #[error("no witness found for {0} within search limits")]
    SynthesisExhausted(BigInt),

    #[error("invalid scan configuration: {0}")]
    ScanConfig(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
