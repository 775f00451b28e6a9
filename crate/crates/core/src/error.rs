use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyFacetList,
    #[error("duplicate vertex label `{0}` in vertex order")]
    DuplicateLabel(String),
    #[error("vertex `{0}` is not in the declared vertex order")]
    UnknownVertex(String),
    #[error("{count} vertices exceed the limit of {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("face is not a face of the complex")]
    NotAFace,
    #[error("`{0}` is not a vertex of the complex")]
    NotAVertex(String),
    #[error("complex has no face of dimension {0}")]
    NoFaceOfDimension(i64),
    #[error("vertex label `{0}` occurs in both complexes")]
    OverlappingVertices(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("family members have different cardinalities")]
    MixedCardinalities,
    #[error("family is not {0}-intersecting")]
    NotIntersecting(usize),
    #[error("first complex is not a subcomplex of the second")]
    NotASubcomplex,
    #[error("complex has no face of cardinality {0}")]
    NoFaceOfSize(usize),
    #[error("candidate pool of {size} members exceeds the limit of {limit}")]
    PoolTooLarge { size: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
