use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field specification `{0}` (expected `q` or `fp:<prime>`)")]
    InvalidField(String),
    #[error("{0} is not a prime at most 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("too many vertices: {0}")]
    TooManyVertices(usize),
    #[error("corpus size {0} too large (at most 8 vertices)")]
    CorpusTooLarge(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("generator `{0}` has a nonzero constant term")]
    ConstantTerm(String),
    #[error("presentation is not minimal: variable `{0}` is a generator")]
    NonMinimalPresentation(String),
    #[error("ideal is not squarefree; polarize it first")]
    NotSquarefree,
    #[error("presentation is not monomial")]
    NotMonomial,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("coefficient {0} is not defined in the chosen field")]
    CoefficientNotInField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation requires a finite field")]
    FieldNotFinite,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("modules live over different algebras")]
    MismatchedAlgebras,
    #[error("bound {0} too large (at most 12)")]
    BoundTooLarge(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
