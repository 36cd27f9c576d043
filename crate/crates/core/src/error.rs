use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constants are not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    JacobiViolated { i: usize, j: usize, k: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("Lee form does not vanish on the derived algebra")]
    NonClosedLeeForm,
    #[error("Lee form is zero")]
    ZeroLeeForm,
    #[error("dimension {0} is below 3; LCP structures need dim >= 3")]
    DimensionTooSmall(usize),
    #[error("input algebra is unimodular; the Lee form would vanish")]
    UnimodularInput,
    #[error("representation does not vanish on the derived algebra")]
    RepNotVanishingOnDerived,
    #[error("representation image is not skew-symmetric")]
    RepNotSkew,
    #[error("tr(A) = 0")]
    TraceZero,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("the skew blocks do not commute")]
    NonCommutingPair,
    #[error("B2 must be nonzero")]
    B2Zero,
    #[error("structure is not adapted: theta does not vanish on the flat subspace")]
    NotAdapted,
    #[error("structure fails LCP verification: {0}")]
    NotLcp(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown table algebra {0}")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("outside the supported envelope: {0}")]
    EnvelopeExceeded(String),
    #[error("matrix is not trace-free")]
    NonTraceFree,
    #[error("m must be at least 3, got {0}")]
    MTooSmall(i64),
    #[error("inputs must be positive")]
    NonPositiveInput,
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
