use thiserror::Error;

use crate::Index;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("insufficient support: requested {requested} greedy indices but the support has {support}")]
    InsufficientSupport { requested: usize, support: usize },

    #[error("brute-force cap exceeded: support of size {size} exceeds cap {cap}")]
    BruteForceCapExceeded { size: usize, cap: usize },

    #[error("sign pattern domain does not match the index set")]
    SignDomainMismatch,

    #[error("invalid sign value {0}; signs must be +1 or -1")]
    InvalidSign(f64),

    #[error("construction depth exceeded: index {index} lies beyond the built range (limit {limit})")]
    ConstructionDepthExceeded { index: Index, limit: Index },

    #[error("gap sequence not unbounded enough within horizon: {0}")]
    HorizonExhausted(String),

    #[error("p sequence must strictly decrease and stay above 1")]
    PSequenceNotDecreasing,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("density cap violated at m = {m}: {count} marked indices exceed alpha * m^(1/4)")]
    DensityCapViolated { m: u64, count: u64 },

    #[error("gap sequence is unbounded; a bounded sequence is required")]
    UnboundedGap,

    #[error("size mismatch: |A| = {a} exceeds |B| = {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("projection set has {size} elements, more than m = {m}")]
    ProjectionTooLarge { size: usize, m: usize },

    #[error("unknown constraint `{0}`")]
    UnknownConstraint(String),

    #[error("index arithmetic overflow")]
    IndexOverflow,

    #[error("index {0} does not fit the requested machine integer")]
    IndexTooLarge(Index),

    #[error("invalid construction file: {0}")]
    InvalidConstruction(String),
}
