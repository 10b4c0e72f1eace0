//! Weighted k-nearest-neighbor imputation for heterogeneous tables.
//!
//! Columns hold crisp reals, closed intervals or triangular fuzzy numbers.
//! Missing cells are filled from the `k` nearest rows observed at the same
//! column, using a row distance that only compares mutually observed
//! columns, and the results can be scored with a seeded masking benchmark.
//!
//! ```
//! use hetknn::{fixtures, impute, CellRef, CellValue};
//!
//! let mut m = fixtures::fixture("case1").unwrap();
//! m.set(CellRef::new(2, 2), CellValue::Missing).unwrap();
//! let result = impute(&m, 2).unwrap();
//! assert!(result.unimputable.is_empty());
//! assert!(!result.matrix.cell(2, 2).is_missing());
//! ```

pub mod cli;
pub mod distance;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod impute;
pub mod model;
pub mod par;
pub mod typed_csv;

pub use distance::{
    cell_distance, compare_rows, crisp_distance, interval_distance, row_distance, tfn_distance, tfn_membership,
    RowComparison, RowDistance,
};
pub use error::{Error, Result};
pub use eval::{
    benchmark, benchmark_with, cell_error, mask_random, mask_random_with, matrix_error, BenchmarkConfig,
    BenchmarkReport, MaskMode, MaskPattern, Summary, TrialRecord,
};
pub use impute::{
    combine_cells, find_neighbors, impute, impute_with, neighbor_weights, Donor, ImputationResult, NeighborSet,
};
pub use model::{CellRef, CellValue, ColumnKind, DataMatrix, Interval, Tfn, Violation, ViolationKind};
pub use par::Execution;
