use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("period word must be nonempty")]
    EmptyPeriod,
    #[error("symbol {0:?} is not a binary digit")]
    NonBinary(char),
    #[error("malformed sequence {input:?}: {reason}")]
    MalformedSeq { input: String, reason: &'static str },
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("the all-zero sequence has no level")]
    NoLevel,
    #[error("sequence {seq} has level {found:?}, expected {expected}")]
    LevelMismatch {
        seq: String,
        expected: usize,
        found: Option<usize>,
    },
    #[error("arc parameter {0} is outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("{0} is not a node of the truncation graph")]
    NotANode(String),
    #[error("prefix bound {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid truncation parameters: {0}")]
    InvalidParams(String),
    #[error("invalid render spec: {0}")]
    InvalidRender(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
