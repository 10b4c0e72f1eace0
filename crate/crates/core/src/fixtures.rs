//! Small published decision matrices used as case studies.
//!
//! * `case1`: 3x3 normalized decision matrix (crisp, interval, fuzzy).
//! * `case2`: 4x4 multi-criteria decision matrix (crisp, fuzzy, fuzzy, interval).
//! * `case3`: 5x3 multi-attribute decision matrix (crisp, interval, fuzzy).

use crate::error::{Error, Result};
use crate::model::{CellValue, ColumnKind, DataMatrix, Interval, Tfn};

pub const FIXTURE_NAMES: [&str; 3] = ["case1", "case2", "case3"];

fn c(x: f64) -> CellValue {
    CellValue::Crisp(x)
}

fn i(lower: f64, upper: f64) -> CellValue {
    CellValue::Interval(Interval { lower, upper })
}

fn f(a1: f64, a2: f64, a3: f64) -> CellValue {
    CellValue::Fuzzy(Tfn { a1, a2, a3 })
}

use ColumnKind::{Crisp, Fuzzy, Interval as Iv};

fn case1() -> DataMatrix {
    DataMatrix::unnamed(
        vec![Crisp, Iv, Fuzzy],
        vec![
            vec![c(0.5891), i(0.31623, 0.94868), f(0.455842, 0.569803, 0.683763)],
            vec![c(0.5624), i(0.55470, 0.83205), f(0.371391, 0.557086, 0.742781)],
            vec![c(0.5802), i(0.55470, 0.83205), f(0.491539, 0.573462, 0.655386)],
        ],
    )
    .expect("fixture shape")
}

fn case2() -> DataMatrix {
    DataMatrix::unnamed(
        vec![Crisp, Fuzzy, Fuzzy, Iv],
        vec![
            vec![c(0.47), f(0.32, 0.48, 0.71), f(0.52, 0.67, 0.87), i(0.40, 0.55)],
            vec![c(0.58), f(0.16, 0.29, 0.47), f(0.26, 0.37, 0.52), i(0.41, 0.58)],
            vec![c(0.42), f(0.49, 0.67, 0.94), f(0.39, 0.52, 0.70), i(0.37, 0.54)],
            vec![c(0.51), f(0.32, 0.48, 0.71), f(0.26, 0.37, 0.52), i(0.50, 0.69)],
        ],
    )
    .expect("fixture shape")
}

fn case3() -> DataMatrix {
    DataMatrix::unnamed(
        vec![Crisp, Iv, Fuzzy],
        vec![
            vec![c(0.45), i(0.60, 0.80), f(0.42, 0.57, 0.71)],
            vec![c(0.41), i(0.37, 0.93), f(0.27, 0.53, 0.80)],
            vec![c(0.48), i(0.32, 0.95), f(0.46, 0.57, 0.68)],
            vec![c(0.43), i(0.55, 0.83), f(0.37, 0.56, 0.74)],
            vec![c(0.46), i(0.20, 0.98), f(0.49, 0.57, 0.66)],
        ],
    )
    .expect("fixture shape")
}

/// Looks up an embedded matrix by name.
pub fn fixture(name: &str) -> Result<DataMatrix> {
    match name {
        "case1" => Ok(case1()),
        "case2" => Ok(case2()),
        "case3" => Ok(case3()),
        _ => Err(Error::UnknownFixture {
            name: name.to_string(),
            available: FIXTURE_NAMES.join(", "),
        }),
    }
}
