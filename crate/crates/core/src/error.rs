use thiserror::Error;

/// Errors raised by constructors and operations. Axiom failures are not
/// errors: they are reported through [`crate::AxiomReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table must have positive order")]
    EmptyTable,
    #[error("row {row} has length {len}, expected {order}")]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("one-based table contains 0 at ({row}, {col})")]
    ZeroInOneBased { row: usize, col: usize },
    #[error("map has length {len}, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("map value {value} at index {index} is out of range for order {order}")]
    MapOutOfRange { index: usize, value: usize, order: usize },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("map is not a group endomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotEndomorphism { a: usize, b: usize },
    #[error("map is not a group automorphism")]
    NotAutomorphism,
    #[error("map is not an automorphism of the table (witness {witness:?})")]
    NotTableAutomorphism { witness: Vec<usize> },
    #[error("built diagonal {built:?} differs from requested structure map {requested:?}")]
    DiagonalMismatch { built: Vec<usize>, requested: Vec<usize> },
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("order {order} exceeds cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("induced operation is not well defined: classes of {witness:?} disagree")]
    IllDefinedQuotient { witness: Vec<usize> },
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("search space {size} exceeds cap {cap}")]
    SearchTooLarge { size: u128, cap: u128 },
    #[error("entry ({x}, {y}) is not a permutation of the fiber")]
    NotAPermutation { x: usize, y: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {what} (witness {witness:?})")]
    Precondition { what: String, witness: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
