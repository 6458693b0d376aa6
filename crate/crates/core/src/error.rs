use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial has a nonzero constant term")]
    NonzeroConstant,
    #[error("Newton boundary is not convenient")]
    NotConvenient,
    #[error("unsupported number of variables: {0}")]
    UnsupportedArity(usize),
    #[error("expected a {expected}-dimensional face, got dimension {got}")]
    WrongFaceDimension { expected: usize, got: usize },
    #[error("face is not a face of the Newton boundary")]
    FaceNotOnBoundary,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid family member: {0}")]
    InvalidMember(String),
    #[error("certificate at {point} rejected: {reason}")]
    Certificate { point: String, reason: String },
    #[error("local model at {point} is not determined: {reason}")]
    LocalModel { point: String, reason: String },
    #[error("generic plane section not found after {0} attempts")]
    GenericityFailure(usize),
    #[error("zeta-function inconsistent with the family shape: {0}")]
    ZetaShape(String),
    #[error("no catalog entry for singularity type {0}")]
    Uncatalogued(String),
    #[error("graph data inconsistent: {0}")]
    Graph(String),
    #[error("cone is not a maximal cone of the fan")]
    ConeNotInFan,
    #[error("{0}")]
    Io(String),
}
