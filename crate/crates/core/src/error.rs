use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid distance distribution function: {0}")]
    InvalidDdf(String),
    #[error("not a metric: {0}")]
    Metric(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("incomplete d.d.f. matrix: missing entry ({0}, {1})")]
    MissingEntry(String, String),
    #[error("modulus {modulus} exceeds cap {cap}")]
    ModulusCap { modulus: u64, cap: u64 },
    #[error("trivial ideal: {0}")]
    TrivialIdeal(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("search failed: {0}")]
    Search(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
