use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenusError {
    #[error("division by a series with no nonzero known coefficient")]
    DivisionByZeroSeries,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("reversion needs zero constant term and an invertible linear coefficient")]
    NonInvertibleLinearTerm,
    #[error("exp needs f(0) = 0")]
    ExpPrecondition,
    #[error("log needs g(0) = 1")]
    LogPrecondition,
    #[error("cannot scale the argument of a series with negative valuation by zero")]
    ZeroScale,
    #[error("insufficient series order: need {needed}, have {available}")]
    InsufficientOrder { needed: i64, available: i64 },
    #[error("characteristic series must have constant term 1")]
    NotNormalized,
    #[error("missing parameter `{param}` for family `{family}`")]
    MissingParam { family: String, param: String },
    #[error("unknown parameter `{param}` for family `{family}`")]
    UnknownParam { family: String, param: String },
    #[error("unknown series family `{0}`")]
    UnknownFamily(String),
    #[error("no closed form for family `{0}`")]
    UnsupportedFamily(String),
    #[error("dimension mismatch: polynomial degree {degree}, Chern data dimension {dimension}")]
    DimensionMismatch { degree: usize, dimension: usize },
    #[error("partition {parts:?} has weight {weight}, expected {expected}")]
    PartitionWeight { parts: Vec<u32>, weight: usize, expected: usize },
    #[error("weights must be pairwise distinct, {0} is repeated")]
    RepeatedWeight(i64),
    #[error("fixed point has a zero weight")]
    ZeroWeight,
    #[error("fixed point set is empty or has no weights")]
    EmptyFixedPoints,
    #[error("fixed points have differing numbers of weights ({0} and {1})")]
    NonUniformDimension(usize, usize),
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("series is not even: degree {degree} coefficient is nonzero")]
    NotEven { degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed file: {message}")]
    MalformedFile { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, GenusError>;
