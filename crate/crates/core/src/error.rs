use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("measure space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid measure space: {0}")]
    InvalidSpace(String),
    #[error("algebra element is singular (smallest singular value {smallest:.3e})")]
    SingularElement { smallest: f64 },
    #[error("operator is singular (smallest singular value {smallest:.3e})")]
    SingularOperator { smallest: f64 },
    #[error("element is not central")]
    NotCentral,
    #[error("family is not a frame (lower order bound {lower:.3e})")]
    NotAFrame { lower: f64 },
    #[error("{atoms} atoms is too many for subset enumeration; supply sampled subsets")]
    TooManyAtoms { atoms: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("smallness condition violated: {0}")]
    SmallnessViolated(String),
    #[error("conclusion failed: {0}")]
    ConclusionFailed(String),
    #[error("unsatisfiable request: {0}")]
    UnsatisfiableRequest(String),
    #[error("hypothesis unreachable: {0}")]
    HypothesisUnreachable(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
