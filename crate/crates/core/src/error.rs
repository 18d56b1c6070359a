use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cannot glue: last column of the left shape has height {last_column}, right shape has {rows} rows")]
    GluePreconditionViolated { last_column: usize, rows: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("variable x{0} has no assigned value")]
    UnmappedVariable(u32),

    #[error("polynomial is not multihomogeneous of degree {0} in each variable")]
    NotMultihomogeneous(usize),

    #[error("polynomial is not multilinear in x1..x{0}")]
    NotMultilinear(usize),

    #[error("unsupported number of variable sets: {0} (expected 2 or 3)")]
    UnsupportedSetCount(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("computational budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("negative multiplicity {multiplicity} for {partition}")]
    NegativeMultiplicity { partition: String, multiplicity: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}
