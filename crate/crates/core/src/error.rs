use crate::model::{CellRef, ColumnKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised by the library.
///
/// Positions inside parse errors are 1-based (record number, field number);
/// everything else carries the 0-based [`CellRef`] used by the API.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },

    #[error("schema has {schema} columns but {names} column names were given")]
    NameCount { schema: usize, names: usize },

    #[error("cell index out of bounds: {0}")]
    OutOfBounds(CellRef),

    #[error("row index {row} out of bounds for {rows} rows")]
    RowOutOfBounds { row: usize, rows: usize },

    #[error("row distance needs two distinct rows, got {0} twice")]
    SameRow(usize),

    #[error("kind mismatch: expected {expected}")]
    KindMismatch { expected: ColumnKind },

    #[error("missing operand where an observed value is required")]
    MissingOperand,

    #[error("cell {0} is not missing")]
    NotMissing(CellRef),

    #[error("k must be at least 1")]
    InvalidK,

    #[error("neighbor weights need at least one distance")]
    NoDistances,

    #[error("invalid distance {0}: must be finite and nonnegative")]
    InvalidDistance(f64),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("matrix is not complete: missing cell at {0}")]
    Incomplete(CellRef),

    #[error("cannot mask {count} cells in a matrix with {rows} rows")]
    MaskCount { count: usize, rows: usize },

    #[error("shape or schema mismatch between matrices")]
    ShapeMismatch,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRecord {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown fixture {name:?}; available: {available}")]
    UnknownFixture { name: String, available: String },
}
