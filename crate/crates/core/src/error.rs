use thiserror::Error;

/// Errors surfaced by every layer of the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown macro `{0}`")]
    UnknownMacro(String),
    #[error("macro `{name}` takes {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("scalar {0} is not defined in characteristic {1}")]
    NotInField(String, u64),
    #[error("empty multidegree")]
    EmptyMultidegree,
    #[error("not multihomogeneous: {0}")]
    NotMultihomogeneous(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("operation not expressible here: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
