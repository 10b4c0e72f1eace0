//! Weighted k-nearest-neighbor imputation over heterogeneous rows.
//!
//! For every missing cell `(row, col)` the donor candidates are the other
//! rows observed at `col` that are comparable to `row`. The `k` closest
//! donors are combined component-wise with inverse-distance weights.
//! Donors are always taken from the input matrix, never from values imputed
//! earlier in the same pass, so cells are independent of each other.

use std::collections::BTreeMap;

use crate::distance::slice_distance;
use crate::error::{Error, Result};
use crate::model::{CellRef, CellValue, ColumnKind, DataMatrix, Interval, Tfn};
use crate::par::Execution;

/// Distances below this are treated as exact matches.
pub const ZERO_DISTANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Donor {
    pub row: usize,
    pub distance: f64,
    pub weight: f64,
}

/// The donors chosen for one missing cell, nearest first.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborSet {
    pub target: CellRef,
    pub donors: Vec<Donor>,
}

impl NeighborSet {
    pub fn is_empty(&self) -> bool {
        self.donors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImputationResult {
    /// Input with every imputable cell filled in.
    pub matrix: DataMatrix,
    pub trace: BTreeMap<CellRef, NeighborSet>,
    /// Cells with no comparable donor; still missing in `matrix`.
    pub unimputable: Vec<CellRef>,
}

/// Normalized inverse-distance weights.
///
/// If any distance is below [`ZERO_DISTANCE`], those donors split the weight
/// evenly and every other donor gets zero.
pub fn neighbor_weights(distances: &[f64]) -> Result<Vec<f64>> {
    if distances.is_empty() {
        return Err(Error::NoDistances);
    }
    if let Some(&bad) = distances.iter().find(|d| !d.is_finite() || **d < 0.0) {
        return Err(Error::InvalidDistance(bad));
    }
    let exact = distances.iter().filter(|&&d| d < ZERO_DISTANCE).count();
    if exact > 0 {
        let share = 1.0 / exact as f64;
        return Ok(distances
            .iter()
            .map(|&d| if d < ZERO_DISTANCE { share } else { 0.0 })
            .collect());
    }
    let inv: Vec<f64> = distances.iter().map(|d| 1.0 / d).collect();
    let total: f64 = inv.iter().sum();
    Ok(inv.into_iter().map(|w| w / total).collect())
}

/// Up to `k` nearest donors for the missing cell at `target`.
///
/// Ties on distance go to the lower row index.
pub fn find_neighbors(matrix: &DataMatrix, target: CellRef, k: usize) -> Result<NeighborSet> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if !matrix.get(target)?.is_missing() {
        return Err(Error::NotMissing(target));
    }
    let target_row = matrix.row(target.row);
    let mut candidates = Vec::new();
    for r in 0..matrix.rows() {
        if r == target.row || matrix.cell(r, target.col).is_missing() {
            continue;
        }
        if let Some(d) = slice_distance(target_row, matrix.row(r), matrix.schema())? {
            candidates.push((d.value, r));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    candidates.truncate(k);

    if candidates.is_empty() {
        return Ok(NeighborSet { target, donors: Vec::new() });
    }
    let distances: Vec<f64> = candidates.iter().map(|c| c.0).collect();
    let weights = neighbor_weights(&distances)?;
    let donors = candidates
        .into_iter()
        .zip(weights)
        .map(|((distance, row), weight)| Donor { row, distance, weight })
        .collect();
    Ok(NeighborSet { target, donors })
}

fn weighted(values: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut acc = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (x, w) in values {
        acc += w * x;
        if w > 0.0 {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    if lo > hi {
        return acc;
    }
    // A convex combination stays inside the range of its weighted donors;
    // undo rounding drift.
    acc.clamp(lo, hi)
}

/// Weighted component-wise combination of donor cells of one kind.
pub fn combine_cells(donors: &[(CellValue, f64)], kind: ColumnKind) -> Result<CellValue> {
    if donors.is_empty() {
        return Err(Error::NoDistances);
    }
    for (cell, _) in donors {
        match cell.kind() {
            None => return Err(Error::MissingOperand),
            Some(k) if k != kind => return Err(Error::KindMismatch { expected: kind }),
            _ => {}
        }
    }
    let pick = |f: fn(&CellValue) -> f64| weighted(donors.iter().map(|(c, w)| (f(c), *w)));
    let out = match kind {
        ColumnKind::Crisp => CellValue::Crisp(pick(|c| match c {
            CellValue::Crisp(x) => *x,
            _ => unreachable!(),
        })),
        ColumnKind::Interval => {
            let lower = pick(|c| as_interval(c).lower);
            let upper = pick(|c| as_interval(c).upper);
            CellValue::Interval(Interval { lower, upper })
        }
        ColumnKind::Fuzzy => {
            let a1 = pick(|c| as_tfn(c).a1);
            let a2 = pick(|c| as_tfn(c).a2);
            let a3 = pick(|c| as_tfn(c).a3);
            CellValue::Fuzzy(Tfn { a1, a2, a3 })
        }
    };
    Ok(out)
}

fn as_interval(c: &CellValue) -> Interval {
    match c {
        CellValue::Interval(iv) => *iv,
        _ => unreachable!("checked by combine_cells"),
    }
}

fn as_tfn(c: &CellValue) -> Tfn {
    match c {
        CellValue::Fuzzy(t) => *t,
        _ => unreachable!("checked by combine_cells"),
    }
}

/// Imputes every missing cell using the default [`Execution`].
pub fn impute(matrix: &DataMatrix, k: usize) -> Result<ImputationResult> {
    impute_with(matrix, k, Execution::default())
}

/// Imputes every missing cell. The output does not depend on `exec`.
pub fn impute_with(matrix: &DataMatrix, k: usize, exec: Execution) -> Result<ImputationResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if let Some(v) = matrix.validate().first() {
        return Err(Error::InvalidValue(v.to_string()));
    }
    let missing = matrix.missing_cells();
    let solved = exec.map(&missing, |&target| -> Result<(NeighborSet, Option<CellValue>)> {
        let set = find_neighbors(matrix, target, k)?;
        if set.is_empty() {
            return Ok((set, None));
        }
        let donors: Vec<(CellValue, f64)> = set
            .donors
            .iter()
            .map(|d| (*matrix.cell(d.row, target.col), d.weight))
            .collect();
        let value = combine_cells(&donors, matrix.kind(target.col))?;
        Ok((set, Some(value)))
    });

    let mut out = matrix.clone();
    let mut trace = BTreeMap::new();
    let mut unimputable = Vec::new();
    for item in solved {
        let (set, value) = item?;
        match value {
            Some(v) => {
                out.set(set.target, v)?;
                trace.insert(set.target, set);
            }
            None => unimputable.push(set.target),
        }
    }
    Ok(ImputationResult {
        matrix: out,
        trace,
        unimputable,
    })
}
