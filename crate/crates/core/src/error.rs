use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("quiver has an oriented cycle through vertex `{0}`")]
    CyclicQuiver(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("relations are not confluent: overlap `{0}` has two normal forms")]
    NotConfluent(String),
    #[error("no path from `{0}` to `{1}`")]
    NoPath(String, String),
    #[error("more than one path from `{0}` to `{1}`")]
    AmbiguousPath(String, String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("operation requires a prime field")]
    FieldNotSupported,
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("disconnected quiver: classify its components separately")]
    Disconnected,
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("generator map is incomplete: {0}")]
    IncompleteGeneratorMap(String),
}
