use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("empty label at byte {0}")]
    EmptyLabel(usize),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("malformed input at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("enumeration cap exceeded: {size} labels requested, cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("base restrictions disagree: {0} vs {1}")]
    BaseMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = {t} (vanishing factor {factor})")]
    Pole { t: String, factor: String },
    #[error("bracket requires n >= 3, got {0}")]
    BracketDomain(usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("not an induced substructure: {0}")]
    NotEmbedding(String),
    #[error("tree {tree} has level {level} > {n}")]
    LevelExceeded { tree: String, level: usize, n: usize },
    #[error("restriction is not proper")]
    NotProper,
    #[error("incompatible morphisms: {0}")]
    Incompatible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
