//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeTooSmall,
    #[error("field size {0} exceeds the enumerable limit 2^{limit}", limit = crate::ff::MAX_FIELD_BITS)]
    FieldTooLarge(u64),
    #[error("element value {value} is out of range for GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("inverse of zero in GF({0})")]
    ZeroInverse(u32),
    #[error("matrix characteristics differ: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("matrix dimensions incompatible: {0}")]
    DimensionMismatch(String),
    #[error("generator matrix is rank-deficient (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },
    #[error("enumeration budget exceeded: {0} items requested, limit {1}")]
    BudgetExceeded(u128, u128),
    #[error("design has {0} blocks, above the in-memory limit of 2^23; use the streaming block iterator")]
    TooManyBlocks(u128),
    #[error("orthogonal array has repeated rows")]
    RepeatedRows,
    #[error("orthogonal array has repeated columns")]
    RepeatedColumns,
    #[error("evaluation points must be pairwise distinct")]
    RepeatedEvaluationPoints,
    #[error("column multipliers must be nonzero")]
    ZeroMultiplier,
    #[error("code is not MDS of dimension 2")]
    NotMds2,
    #[error("base field must have characteristic 2 and degree >= 2")]
    WrongCharacteristic,
    #[error("base code is not {0}-divisible")]
    NotDivisible(u32),
    #[error("database index {index} out of range for dimension {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("database has {got} symbols but the code dimension is {k}")]
    DatabaseTooLong { got: usize, k: usize },
    #[error("query local index {q} out of range for group size {s}")]
    QueryOutOfRange { q: u32, s: usize },
    #[error("expected {expected} answers, got {got}")]
    AnswerCountMismatch { expected: usize, got: usize },
    #[error("audit requires design strength >= {required}, design has {got}")]
    StrengthTooLow { required: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
