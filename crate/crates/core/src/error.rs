use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("elements live over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("truncation order {k} is unsupported for p = {p} (need 1 <= k <= p - 1)")]
    UnsupportedOrder { p: u32, k: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has no inverse over the ring")]
    NoInverse,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("fixture integrity: {0}")]
    FixtureIntegrity(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
