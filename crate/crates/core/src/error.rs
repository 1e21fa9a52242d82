use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polytope is not full-dimensional in R^{ambient} (dimension {dim:?})")]
    NotFullDimensional { ambient: usize, dim: Option<usize> },
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("polytope has no representation")]
    MissingRepresentation,
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("map does not send the source into the target: {0}")]
    MapNotInto(String),
    #[error("tuple set is not closed under the group action")]
    NotClosed,
    #[error("group action is not free: {0}")]
    NotFree(String),
    #[error("missing high-rank count for k = {0}")]
    MissingHighRank(usize),
    #[error("retry budget exhausted: {0}")]
    RetriesExhausted(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} does not apply to {params}")]
    ClaimNotApplicable { claim: String, params: String },
    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
