use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q must be a prime power, got {0}")]
    NotPrimePower(u32),

    #[error("unsupported field size q = {0}; supported values are 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedQ(u32),

    #[error("{0} is not an element of the subfield F_q")]
    NotInSubfield(String),

    #[error("norm equation x*conj(x) = 0 has no nonzero solutions")]
    ZeroNorm,

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("n must be ≥ 2, got {0}")]
    DimensionTooSmall(u32),

    #[error("{what} of size {size} exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("vector is not a nonzero isotropic vector")]
    NotIsotropic,

    #[error("relation index {index} out of range for rank {rank}")]
    InvalidRelation { index: usize, rank: usize },

    #[error("relation T is empty for n = {0} (requires n ≥ 4)")]
    EmptyT(u32),

    #[error("closed form and brute force disagree at (h,i,j) = ({h},{i},{j}): closed {closed}, brute force {brute}")]
    OracleMismatch {
        h: usize,
        i: usize,
        j: usize,
        closed: u64,
        brute: u64,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("value {0} does not fit in 64 bits")]
    Overflow(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("multiplicity m_{index} = {value} is not a positive integer")]
    BadMultiplicity { index: usize, value: String },

    #[error("character tables are only defined for the commutative case q = 2, got q = {0}")]
    NotCommutative(u32),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("no dual partition: fused rows fall into {distinct} classes, {expected} required")]
    NoDualPartition { distinct: usize, expected: usize },

    #[error("{check} fails at {at}")]
    IdentityFailed { check: &'static str, at: String },

    #[error("parse error: {0}")]
    Parse(String),
}
