//! Typed cells, column schemas and the matrix container.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    /// Checked constructor: finite endpoints with `lower <= upper`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let iv = Self { lower, upper };
        match iv.defect() {
            None => Ok(iv),
            Some(d) => Err(Error::InvalidValue(d.to_string())),
        }
    }

    fn defect(&self) -> Option<ViolationKind> {
        if !self.lower.is_finite() || !self.upper.is_finite() {
            Some(ViolationKind::NonFinite)
        } else if self.lower > self.upper {
            Some(ViolationKind::IntervalOrder)
        } else {
            None
        }
    }
}

/// Triangular fuzzy number `(a1, a2, a3)` with peak at `a2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tfn {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Tfn {
    /// Checked constructor: finite components with `a1 <= a2 <= a3`.
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let t = Self { a1, a2, a3 };
        match t.defect() {
            None => Ok(t),
            Some(d) => Err(Error::InvalidValue(d.to_string())),
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    fn defect(&self) -> Option<ViolationKind> {
        if self.components().iter().any(|c| !c.is_finite()) {
            Some(ViolationKind::NonFinite)
        } else if !(self.a1 <= self.a2 && self.a2 <= self.a3) {
            Some(ViolationKind::TfnOrder)
        } else {
            None
        }
    }
}

/// One cell of a [`DataMatrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellValue {
    Crisp(f64),
    Interval(Interval),
    Fuzzy(Tfn),
    Missing,
}

impl CellValue {
    pub fn crisp(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Self::Crisp(value))
        } else {
            Err(Error::InvalidValue(ViolationKind::NonFinite.to_string()))
        }
    }

    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        Interval::new(lower, upper).map(Self::Interval)
    }

    pub fn fuzzy(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        Tfn::new(a1, a2, a3).map(Self::Fuzzy)
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, Self::Missing)
    }

    /// Kind of an observed cell, `None` for [`CellValue::Missing`].
    pub fn kind(&self) -> Option<ColumnKind> {
        match self {
            Self::Crisp(_) => Some(ColumnKind::Crisp),
            Self::Interval(_) => Some(ColumnKind::Interval),
            Self::Fuzzy(_) => Some(ColumnKind::Fuzzy),
            Self::Missing => None,
        }
    }

    fn defect(&self) -> Option<ViolationKind> {
        match self {
            Self::Crisp(v) if !v.is_finite() => Some(ViolationKind::NonFinite),
            Self::Interval(iv) => iv.defect(),
            Self::Fuzzy(t) => t.defect(),
            _ => None,
        }
    }
}

/// The single data kind every observed cell of a column must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnKind {
    Crisp,
    Interval,
    Fuzzy,
}

impl ColumnKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Crisp => "crisp",
            Self::Interval => "interval",
            Self::Fuzzy => "fuzzy",
        }
    }
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColumnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crisp" => Ok(Self::Crisp),
            "interval" => Ok(Self::Interval),
            "fuzzy" => Ok(Self::Fuzzy),
            other => Err(Error::InvalidValue(format!(
                "unknown column kind {other:?} (expected crisp, interval or fuzzy)"
            ))),
        }
    }
}

/// 0-based address of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub row: usize,
    pub col: usize,
}

impl CellRef {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    IntervalOrder,
    TfnOrder,
    NonFinite,
    KindMismatch { expected: ColumnKind, found: ColumnKind },
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IntervalOrder => f.write_str("lower > upper"),
            Self::TfnOrder => f.write_str("fuzzy components not ordered (a1 <= a2 <= a3)"),
            Self::NonFinite => f.write_str("non-finite component"),
            Self::KindMismatch { expected, found } => {
                write!(f, "kind mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// One invariant violation found by [`DataMatrix::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub cell: CellRef,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.cell)
    }
}

/// Rectangular grid of [`CellValue`]s with a declared kind per column.
///
/// Construction only checks the shape. Cell-level invariants (ordering,
/// finiteness, schema agreement) are reported by [`DataMatrix::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    schema: Vec<ColumnKind>,
    names: Vec<String>,
    cells: Vec<CellValue>,
    rows: usize,
}

impl DataMatrix {
    pub fn new(names: Vec<String>, schema: Vec<ColumnKind>, rows: Vec<Vec<CellValue>>) -> Result<Self> {
        if schema.is_empty() || rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if names.len() != schema.len() {
            return Err(Error::NameCount {
                schema: schema.len(),
                names: names.len(),
            });
        }
        let m = schema.len();
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Ragged {
                    row: i,
                    expected: m,
                    found: row.len(),
                });
            }
            cells.extend(row);
        }
        Ok(Self {
            schema,
            names,
            cells,
            rows: n,
        })
    }

    /// Like [`DataMatrix::new`] with generated names `c1, c2, ...`.
    pub fn unnamed(schema: Vec<ColumnKind>, rows: Vec<Vec<CellValue>>) -> Result<Self> {
        let names = (1..=schema.len()).map(|i| format!("c{i}")).collect();
        Self::new(names, schema, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.schema.len()
    }

    pub fn schema(&self) -> &[ColumnKind] {
        &self.schema
    }

    pub fn column_names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, col: usize) -> ColumnKind {
        self.schema[col]
    }

    /// Panics if out of bounds; see [`DataMatrix::get`] for the checked form.
    pub fn cell(&self, row: usize, col: usize) -> &CellValue {
        assert!(row < self.rows && col < self.cols(), "cell ({row},{col}) out of bounds");
        &self.cells[row * self.cols() + col]
    }

    pub fn get(&self, at: CellRef) -> Result<&CellValue> {
        if at.row < self.rows && at.col < self.cols() {
            Ok(&self.cells[at.row * self.cols() + at.col])
        } else {
            Err(Error::OutOfBounds(at))
        }
    }

    pub fn row(&self, row: usize) -> &[CellValue] {
        let m = self.cols();
        &self.cells[row * m..(row + 1) * m]
    }

    /// Overwrites one cell. The matrix may become invalid; call `validate`
    /// if the value is untrusted.
    pub fn set(&mut self, at: CellRef, value: CellValue) -> Result<()> {
        if at.row < self.rows && at.col < self.cols() {
            let m = self.cols();
            self.cells[at.row * m + at.col] = value;
            Ok(())
        } else {
            Err(Error::OutOfBounds(at))
        }
    }

    /// Every invariant violation, in row-major order. Empty when valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (idx, cell) in self.cells.iter().enumerate() {
            let at = CellRef::new(idx / self.cols(), idx % self.cols());
            let Some(found) = cell.kind() else { continue };
            let expected = self.schema[at.col];
            if found != expected {
                out.push(Violation {
                    cell: at,
                    kind: ViolationKind::KindMismatch { expected, found },
                });
            } else if let Some(kind) = cell.defect() {
                out.push(Violation { cell: at, kind });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Missing cells in row-major order.
    pub fn missing_cells(&self) -> Vec<CellRef> {
        let m = self.cols();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_missing())
            .map(|(idx, _)| CellRef::new(idx / m, idx % m))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        !self.cells.iter().any(CellValue::is_missing)
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        match self.missing_cells().first() {
            Some(&at) => Err(Error::Incomplete(at)),
            None => Ok(()),
        }
    }
}
