use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} coordinates, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("group types differ: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("weight is not integral: {0}")]
    NonIntegral(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("coordinate {0} appears in more than one chain")]
    DuplicateCoordinate(i64),
    #[error("a union may contain at most one non-A chain")]
    MultipleXChains,
    #[error("chain lengths add up to {found}, but the group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("A-chains may not contain the coordinate 0")]
    ZeroInAChain,
    #[error("chain {chain} does not belong to family {family}")]
    WrongFamily { chain: String, family: String },
    #[error("invalid orbit label: {0}")]
    InvalidOrbit(String),
    #[error("{0} is an induced representation, not a unipotent one")]
    InducedNotUnipotent(String),
    #[error("rank {rank} exceeds the configured maximum {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("operation not supported for family {0}")]
    UnsupportedFamily(String),
    #[error("union is not scattered: {0}")]
    NotScattered(String),
    #[error("invalid skew shape: {0}")]
    InvalidShape(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("type-A certificate search is not unique: {0}")]
    CertificateNotUnique(String),
    #[error("no certified spin-lowest K-type for {0}")]
    CertificateFailedAfterFallback(String),
    #[error("degree-k witness failed: {0}")]
    WitnessFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
