use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("q = {0} exceeds the supported field size cap of 256")]
    CapExceeded(usize),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("element encoding {elem} is out of range for q = {q}")]
    InvalidElement { elem: usize, q: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point set is empty")]
    EmptySet,
    #[error("point set contains the origin")]
    OriginPresent,
    #[error("dimension n = {0} is too small (need n >= 2)")]
    DimensionTooSmall(usize),
    #[error("operation requires q = 2, got q = {0}")]
    NotBinary(usize),
    #[error("operation requires an even dimension, got n = {0}")]
    OddDimension(usize),
    #[error("anchor {0:?} is a scalar multiple of a standard basis vector")]
    BadAnchor(Vec<u8>),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("the code is the zero code")]
    ZeroCode,
    #[error("no affine blocking set of size <= {0} exists")]
    CapTooSmall(usize),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<u8>),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("worker pool: {0}")]
    Workers(String),
}

pub type Result<T> = std::result::Result<T, Error>;
