use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("enumeration exceeded the configured bound of {cap} steps")]
    CardinalityExceeded { cap: usize },
    #[error("fibre over {object} has {size} elements, not below the bound {lambda}")]
    FibreTooLarge { object: String, size: usize, lambda: usize },
    #[error("product fibre over ({0},{1}) has no classifying object")]
    MissingProduct(usize, usize),
    #[error("enumeration cancelled")]
    Cancelled,
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidNatTrans(String),
    #[error("cospan legs have different codomains")]
    CospanMismatch,
    #[error("triangle over the base does not commute: {0}")]
    TriangleMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("spans do not share the middle boundary")]
    BoundaryMismatch,
    #[error("not a fibration: no cartesian lift of {beta} at {object}")]
    NotAFibration { beta: String, object: String },
    #[error("no lift: {0}")]
    NoLift(String),
    #[error("no colimit at {0}")]
    NoColimit(String),
    #[error("no limit at {0}")]
    NoLimit(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a cosieve: {0}")]
    NotACosieve(String),
    #[error("no adjoint: {0}")]
    NoAdjoint(String),
    #[error("cannot drop level 0 of a 0-level globular object")]
    TruncationUnderflow,
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error("missing corpus file {0}")]
    MissingCorpus(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
