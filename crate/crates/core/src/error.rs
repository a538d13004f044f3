use alloc::string::String;

/// Errors raised anywhere in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not invertible")]
    NotInvertible(u32),
    #[error("invalid prime modulus {0}: expected an odd prime above 3 and below 2^31")]
    InvalidPrime(u32),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),
    #[error("support of odd size {0}")]
    OddSupport(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("grading violated: {0}")]
    Grading(String),
    #[error("hyperplane form is zero")]
    ZeroHyperplane,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("empty basis")]
    EmptyBasis,
    #[error("wrong generic rank: expected {expected}, found {found}")]
    WrongGenericRank { expected: usize, found: usize },
    #[error("codimension {found} differs from the expected {expected}")]
    Codimension { expected: i64, found: i64 },
    #[error("positive-dimensional degeneracy (projective dimension {0})")]
    PositiveDimensionalDegeneracy(i64),
    #[error("not a vector bundle kernel: pointwise rank {found} < {expected}")]
    NotVectorBundleKernel { expected: usize, found: usize },
    #[error("resampling exhausted after {attempts} attempts: {what}")]
    ResamplingExhausted { what: String, attempts: u32 },
    #[error("inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
