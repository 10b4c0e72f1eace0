//! Per-kind cell distances and the missingness-aware row distance.
//!
//! The row distance between rows `i` and `j` only looks at columns observed
//! in both rows. It is the square root of the *mean* per-cell distance over
//! those shared columns:
//!
//! ```text
//! d(i, j) = sqrt( sum_l r_il r_jl d_l(x_il, x_jl) / sum_l r_il r_jl )
//! ```
//!
//! where `d_l` is the distance for the kind of column `l`. Rows sharing no
//! observed column are [incomparable](RowComparison::distance).

use crate::error::{Error, Result};
use crate::model::{CellValue, ColumnKind, DataMatrix, Interval, Tfn};

/// `sqrt((a - b)^2)`, i.e. `|a - b|`.
pub fn crisp_distance(a: f64, b: f64) -> f64 {
    (a - b).abs()
}

/// Half the Euclidean distance between the endpoint pairs.
pub fn interval_distance(a: &Interval, b: &Interval) -> f64 {
    let dl = a.lower - b.lower;
    let du = a.upper - b.upper;
    0.5 * (dl * dl + du * du).sqrt()
}

/// Mean absolute difference of the three components.
pub fn tfn_distance(a: &Tfn, b: &Tfn) -> f64 {
    ((a.a1 - b.a1).abs() + (a.a2 - b.a2).abs() + (a.a3 - b.a3).abs()) / 3.0
}

/// Triangular membership degree of `x`.
///
/// `x == a2` always maps to 1, which also covers degenerate numbers with
/// `a1 == a2` or `a2 == a3`.
pub fn tfn_membership(t: &Tfn, x: f64) -> f64 {
    if x == t.a2 {
        1.0
    } else if t.a1 < x && x < t.a2 {
        (x - t.a1) / (t.a2 - t.a1)
    } else if t.a2 < x && x < t.a3 {
        (t.a3 - x) / (t.a3 - t.a2)
    } else {
        0.0
    }
}

/// Dispatches to the distance for `kind`. Both operands must be observed and
/// of that kind.
pub fn cell_distance(a: &CellValue, b: &CellValue, kind: ColumnKind) -> Result<f64> {
    match (a, b, kind) {
        (CellValue::Crisp(x), CellValue::Crisp(y), ColumnKind::Crisp) => Ok(crisp_distance(*x, *y)),
        (CellValue::Interval(x), CellValue::Interval(y), ColumnKind::Interval) => Ok(interval_distance(x, y)),
        (CellValue::Fuzzy(x), CellValue::Fuzzy(y), ColumnKind::Fuzzy) => Ok(tfn_distance(x, y)),
        (CellValue::Missing, _, _) | (_, CellValue::Missing, _) => Err(Error::MissingOperand),
        _ => Err(Error::KindMismatch { expected: kind }),
    }
}

/// Distance between two comparable rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowDistance {
    pub value: f64,
    /// Number of columns observed in both rows; always at least 1.
    pub shared_features: usize,
}

/// Row distance together with the per-column cell distances feeding it.
#[derive(Debug, Clone, PartialEq)]
pub struct RowComparison {
    /// `None` for columns where either row is missing.
    pub per_column: Vec<Option<f64>>,
    /// `None` when the rows share no observed column.
    pub distance: Option<RowDistance>,
}

fn check_pair(matrix: &DataMatrix, i: usize, j: usize) -> Result<()> {
    for r in [i, j] {
        if r >= matrix.rows() {
            return Err(Error::RowOutOfBounds { row: r, rows: matrix.rows() });
        }
    }
    if i == j {
        return Err(Error::SameRow(i));
    }
    Ok(())
}

/// Row distance between rows `i` and `j`; `Ok(None)` means incomparable.
pub fn row_distance(matrix: &DataMatrix, i: usize, j: usize) -> Result<Option<RowDistance>> {
    check_pair(matrix, i, j)?;
    slice_distance(matrix.row(i), matrix.row(j), matrix.schema())
}

/// [`row_distance`] plus the individual cell distances.
pub fn compare_rows(matrix: &DataMatrix, i: usize, j: usize) -> Result<RowComparison> {
    check_pair(matrix, i, j)?;
    let per_column = matrix
        .row(i)
        .iter()
        .zip(matrix.row(j))
        .zip(matrix.schema())
        .map(|((a, b), &kind)| {
            if a.is_missing() || b.is_missing() {
                Ok(None)
            } else {
                cell_distance(a, b, kind).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let distance = slice_distance(matrix.row(i), matrix.row(j), matrix.schema())?;
    Ok(RowComparison { per_column, distance })
}

pub(crate) fn slice_distance(a: &[CellValue], b: &[CellValue], schema: &[ColumnKind]) -> Result<Option<RowDistance>> {
    let mut sum = 0.0;
    let mut shared = 0usize;
    for ((x, y), &kind) in a.iter().zip(b).zip(schema) {
        if x.is_missing() || y.is_missing() {
            continue;
        }
        sum += cell_distance(x, y, kind)?;
        shared += 1;
    }
    if shared == 0 {
        return Ok(None);
    }
    Ok(Some(RowDistance {
        value: (sum / shared as f64).sqrt(),
        shared_features: shared,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::CellRef;

    fn tfn(a1: f64, a2: f64, a3: f64) -> Tfn {
        Tfn { a1, a2, a3 }
    }

    fn iv(lower: f64, upper: f64) -> Interval {
        Interval { lower, upper }
    }

    fn table3() -> DataMatrix {
        let mut m = fixtures::fixture("case1").unwrap();
        m.set(CellRef::new(2, 2), CellValue::Missing).unwrap();
        m
    }

    #[test]
    fn crisp_examples() {
        assert!((crisp_distance(0.5802, 0.5624) - 0.0178).abs() < 1e-12);
        assert_eq!(crisp_distance(0.7, 0.7), 0.0);
        assert_eq!(crisp_distance(0.0, 3.0), 3.0);
    }

    #[test]
    fn interval_examples() {
        // 0.5 * sqrt(0.23847^2 + 0.11663^2)
        let d = interval_distance(&iv(0.31623, 0.94868), &iv(0.55470, 0.83205));
        assert!((d - 0.132732).abs() < 1e-6, "{d}");
        assert_eq!(interval_distance(&iv(0.2, 0.4), &iv(0.2, 0.4)), 0.0);
        assert!((interval_distance(&iv(0.0, 0.0), &iv(2.0, 2.0)) - 8f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn tfn_examples() {
        let d = tfn_distance(&tfn(0.455842, 0.569803, 0.683763), &tfn(0.371391, 0.557086, 0.742781));
        assert!((d - 0.052062).abs() < 1e-6, "{d}");
        assert_eq!(tfn_distance(&tfn(0.1, 0.2, 0.3), &tfn(0.1, 0.2, 0.3)), 0.0);
        assert_eq!(tfn_distance(&tfn(0.0, 0.0, 0.0), &tfn(3.0, 3.0, 3.0)), 3.0);
    }

    #[test]
    fn membership() {
        let t = tfn(0.0, 1.0, 2.0);
        assert_eq!(tfn_membership(&t, 1.0), 1.0);
        assert_eq!(tfn_membership(&t, 0.5), 0.5);
        assert_eq!(tfn_membership(&t, 1.5), 0.5);
        assert_eq!(tfn_membership(&t, 3.0), 0.0);
        assert_eq!(tfn_membership(&t, 0.0), 0.0);
        assert_eq!(tfn_membership(&t, 2.0), 0.0);
        assert_eq!(tfn_membership(&tfn(1.0, 1.0, 2.0), 1.0), 1.0);
        assert_eq!(tfn_membership(&tfn(1.0, 1.0, 1.0), 1.0), 1.0);
    }

    #[test]
    fn cell_dispatch() {
        let d = cell_distance(&CellValue::Crisp(0.47), &CellValue::Crisp(0.58), ColumnKind::Crisp).unwrap();
        assert!((d - 0.11).abs() < 1e-12);
        let a = CellValue::Interval(iv(0.55470, 0.83205));
        assert_eq!(cell_distance(&a, &a, ColumnKind::Interval).unwrap(), 0.0);
        let d = cell_distance(
            &CellValue::Fuzzy(tfn(0.0, 0.0, 0.0)),
            &CellValue::Fuzzy(tfn(3.0, 3.0, 3.0)),
            ColumnKind::Fuzzy,
        )
        .unwrap();
        assert_eq!(d, 3.0);
    }

    #[test]
    fn cell_dispatch_errors() {
        assert_eq!(
            cell_distance(&CellValue::Crisp(0.1), &CellValue::Crisp(0.2), ColumnKind::Fuzzy),
            Err(Error::KindMismatch { expected: ColumnKind::Fuzzy })
        );
        assert_eq!(
            cell_distance(&CellValue::Missing, &CellValue::Crisp(0.2), ColumnKind::Crisp),
            Err(Error::MissingOperand)
        );
    }

    #[test]
    fn table3_row_distances() {
        let m = table3();
        let d0 = row_distance(&m, 2, 0).unwrap().unwrap();
        let d1 = row_distance(&m, 2, 1).unwrap().unwrap();
        assert!((d0.value - 0.2661).abs() < 5e-4, "{}", d0.value);
        assert!((d1.value - 0.0945).abs() < 5e-4, "{}", d1.value);
        assert_eq!(d0.shared_features, 2);
        assert_eq!(row_distance(&m, 0, 2).unwrap(), Some(d0));
    }

    #[test]
    fn disjoint_rows_are_incomparable() {
        let m = DataMatrix::unnamed(
            vec![ColumnKind::Crisp, ColumnKind::Crisp],
            vec![
                vec![CellValue::Crisp(1.0), CellValue::Missing],
                vec![CellValue::Missing, CellValue::Crisp(2.0)],
            ],
        )
        .unwrap();
        assert_eq!(row_distance(&m, 0, 1).unwrap(), None);
        let cmp = compare_rows(&m, 0, 1).unwrap();
        assert_eq!(cmp.per_column, vec![None, None]);
    }

    #[test]
    fn row_index_errors() {
        let m = table3();
        assert_eq!(row_distance(&m, 1, 1), Err(Error::SameRow(1)));
        assert!(matches!(row_distance(&m, 0, 3), Err(Error::RowOutOfBounds { row: 3, .. })));
    }

    #[test]
    fn compare_rows_lists_cell_distances() {
        let cmp = compare_rows(&table3(), 2, 0).unwrap();
        assert_eq!(cmp.per_column.len(), 3);
        assert!((cmp.per_column[0].unwrap() - 0.0089).abs() < 1e-12);
        assert!(cmp.per_column[2].is_none());
    }
}
