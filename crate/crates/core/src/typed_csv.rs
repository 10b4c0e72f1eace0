//! Typed CSV codec for heterogeneous matrices.
//!
//! ```text
//! price:crisp,range:interval,rating:fuzzy
//! 0.5891,[0.31623;0.94868],(0.455842;0.569803;0.683763)
//! 0.5624,,NaN
//! ```
//!
//! * The header holds one `name:kind` field per column, kind being
//!   `crisp`, `interval` or `fuzzy`.
//! * Crisp cells are decimal literals, intervals `[lo;hi]`, fuzzy numbers
//!   `(a1;a2;a3)`.
//! * An empty field or `NaN` (any case) is a missing cell.
//! * Whitespace around fields and components is ignored.
//! * Every line after the header is a record, so a blank line is a record
//!   with a single empty field.
//!
//! [`serialize`] writes the canonical form: no padding, empty fields for
//! missing cells and the shortest decimal that round-trips each `f64`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{CellValue, ColumnKind, DataMatrix, Interval, Tfn};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_real(s: &str, line: usize, column: usize) -> Result<f64> {
    let s = s.trim();
    let v: f64 = s
        .parse()
        .map_err(|_| parse_err(line, column, format!("malformed number {s:?}")))?;
    if !v.is_finite() {
        return Err(parse_err(line, column, format!("non-finite number {s:?}")));
    }
    Ok(v)
}

fn parse_components<const N: usize>(body: &str, line: usize, column: usize) -> Result<[f64; N]> {
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != N {
        return Err(parse_err(
            line,
            column,
            format!("expected {N} components separated by ';', found {}", parts.len()),
        ));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = parse_real(p, line, column)?;
    }
    Ok(out)
}

fn parse_cell(field: &str, line: usize, column: usize) -> Result<CellValue> {
    let s = field.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("nan") {
        return Ok(CellValue::Missing);
    }
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| parse_err(line, column, "unterminated interval, expected ']'"))?;
        let [lower, upper] = parse_components::<2>(body, line, column)?;
        return Ok(CellValue::Interval(Interval { lower, upper }));
    }
    if let Some(body) = s.strip_prefix('(') {
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| parse_err(line, column, "unterminated fuzzy number, expected ')'"))?;
        let [a1, a2, a3] = parse_components::<3>(body, line, column)?;
        return Ok(CellValue::Fuzzy(Tfn { a1, a2, a3 }));
    }
    parse_real(s, line, column).map(CellValue::Crisp)
}

/// Parses the grammar without checking cell invariants.
///
/// The result may hold reversed intervals or cells whose kind disagrees with
/// the header; [`DataMatrix::validate`] reports those. Use [`parse`] for
/// trusted input.
pub fn parse_lenient(text: &str) -> Result<DataMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, 1, "empty input, expected a header"))?;
    let mut names = Vec::new();
    let mut schema = Vec::new();
    for (j, field) in header.split(',').enumerate() {
        let (name, kind) = field
            .rsplit_once(':')
            .ok_or_else(|| parse_err(1, j + 1, format!("header field {:?} lacks a ':kind' tag", field.trim())))?;
        let kind: ColumnKind = kind.trim().parse().map_err(|e: Error| parse_err(1, j + 1, e.to_string()))?;
        names.push(name.trim().to_string());
        schema.push(kind);
    }

    let mut rows = Vec::new();
    for (idx, record) in lines.enumerate() {
        let line = idx + 2;
        let fields: Vec<&str> = record.split(',').collect();
        if fields.len() != schema.len() {
            return Err(Error::RaggedRecord {
                line,
                expected: schema.len(),
                found: fields.len(),
            });
        }
        let row = fields
            .iter()
            .enumerate()
            .map(|(j, f)| parse_cell(f, line, j + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(2, 1, "no data records after the header"));
    }
    DataMatrix::new(names, schema, rows)
}

/// Parses and validates a typed CSV document.
pub fn parse(text: &str) -> Result<DataMatrix> {
    let m = parse_lenient(text)?;
    if let Some(v) = m.validate().first() {
        return Err(parse_err(v.cell.row + 2, v.cell.col + 1, v.kind.to_string()));
    }
    Ok(m)
}

fn write_cell(out: &mut String, cell: &CellValue) {
    // Writing to a String cannot fail.
    let _ = match cell {
        CellValue::Crisp(x) => write!(out, "{x}"),
        CellValue::Interval(iv) => write!(out, "[{};{}]", iv.lower, iv.upper),
        CellValue::Fuzzy(t) => write!(out, "({};{};{})", t.a1, t.a2, t.a3),
        CellValue::Missing => Ok(()),
    };
}

/// Canonical text form of `matrix`, one `\n`-terminated line per record.
pub fn serialize(matrix: &DataMatrix) -> String {
    let mut out = String::new();
    for (j, (name, kind)) in matrix.column_names().iter().zip(matrix.schema()).enumerate() {
        if j > 0 {
            out.push(',');
        }
        out.push_str(name);
        out.push(':');
        out.push_str(kind.as_str());
    }
    out.push('\n');
    for r in 0..matrix.rows() {
        for (j, cell) in matrix.row(r).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write_cell(&mut out, cell);
        }
        out.push('\n');
    }
    out
}
