//! Generators and property checks shared by the property and acceptance
//! suites. Each check returns a `TestCaseError` so it can run under the
//! `proptest!` macro or a hand-driven `TestRunner`.

#![allow(dead_code)]

use hetknn::{
    combine_cells, find_neighbors, impute, typed_csv, BenchmarkConfig, CellRef, CellValue, ColumnKind, DataMatrix,
    Interval, Tfn,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

/// Any finite double, including subnormals and signed zeros.
pub fn finite() -> impl Strategy<Value = f64> {
    use proptest::num::f64 as f;
    prop_oneof![
        unit(),
        f::POSITIVE | f::NEGATIVE | f::NORMAL | f::SUBNORMAL | f::ZERO,
        Just(-0.0),
    ]
}

pub fn kind() -> impl Strategy<Value = ColumnKind> {
    prop_oneof![Just(ColumnKind::Crisp), Just(ColumnKind::Interval), Just(ColumnKind::Fuzzy)]
}

pub fn cell_with(kind: ColumnKind, value: BoxedStrategy<f64>) -> BoxedStrategy<CellValue> {
    match kind {
        ColumnKind::Crisp => value.prop_map(CellValue::Crisp).boxed(),
        ColumnKind::Interval => (value.clone(), value)
            .prop_map(|(a, b)| {
                CellValue::Interval(Interval {
                    lower: a.min(b),
                    upper: a.max(b),
                })
            })
            .boxed(),
        ColumnKind::Fuzzy => proptest::collection::vec(value, 3)
            .prop_map(|mut v| {
                v.sort_by(f64::total_cmp);
                CellValue::Fuzzy(Tfn { a1: v[0], a2: v[1], a3: v[2] })
            })
            .boxed(),
    }
}

/// Two observed cells of the same kind, components in `[0, 1]`.
pub fn cell_pair() -> impl Strategy<Value = (CellValue, CellValue, ColumnKind)> {
    kind().prop_flat_map(|k| (cell_with(k, unit().boxed()), cell_with(k, unit().boxed()), Just(k)))
}

/// Valid matrix with `rows` rows; each cell missing with probability
/// `missing_pct / 100`.
pub fn matrix(rows: std::ops::RangeInclusive<usize>, missing_pct: u32, wide: bool) -> BoxedStrategy<DataMatrix> {
    (rows, proptest::collection::vec(kind(), 1..=4))
        .prop_flat_map(move |(n, schema)| {
            let value = if wide { finite().boxed() } else { unit().boxed() };
            let row = schema
                .iter()
                .map(|&k| {
                    (0..100u32, cell_with(k, value.clone()))
                        .prop_map(move |(p, c)| if p < missing_pct { CellValue::Missing } else { c })
                })
                .collect::<Vec<_>>();
            (Just(schema), proptest::collection::vec(row, n))
        })
        .prop_map(|(schema, rows)| DataMatrix::unnamed(schema, rows).unwrap())
        .boxed()
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

pub fn check_distance_axioms(a: &CellValue, b: &CellValue, kind: ColumnKind) -> Result<(), TestCaseError> {
    let ab = hetknn::cell_distance(a, b, kind).map_err(|e| fail(e.to_string()))?;
    let ba = hetknn::cell_distance(b, a, kind).map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(ab.to_bits(), ba.to_bits(), "asymmetric");
    prop_assert!(ab >= 0.0);
    prop_assert_eq!(ab == 0.0, a == b, "identity of indiscernibles");
    prop_assert_eq!(hetknn::cell_distance(a, a, kind).unwrap(), 0.0);
    let bound = match kind {
        ColumnKind::Interval => std::f64::consts::SQRT_2 / 2.0,
        _ => 1.0,
    };
    prop_assert!(ab <= bound + 1e-15, "{} exceeds {}", ab, bound);
    Ok(())
}

/// Independent neighbor search: all pairwise distances, full sort.
pub fn brute_force_neighbors(m: &DataMatrix, target: CellRef, k: usize) -> Vec<(usize, f64)> {
    let dist = |x: &CellValue, y: &CellValue| -> f64 {
        match (x, y) {
            (CellValue::Crisp(a), CellValue::Crisp(b)) => ((a - b) * (a - b)).sqrt(),
            (CellValue::Interval(a), CellValue::Interval(b)) => {
                let dl = a.lower - b.lower;
                let du = a.upper - b.upper;
                0.5 * (dl * dl + du * du).sqrt()
            }
            (CellValue::Fuzzy(a), CellValue::Fuzzy(b)) => {
                let s: f64 = a.components().iter().zip(b.components()).map(|(p, q)| (p - q).abs()).sum();
                s / 3.0
            }
            _ => unreachable!(),
        }
    };
    let mut all = Vec::new();
    for j in 0..m.rows() {
        if j == target.row || m.cell(j, target.col).is_missing() {
            continue;
        }
        let pairs: Vec<f64> = (0..m.cols())
            .filter(|&l| !m.cell(target.row, l).is_missing() && !m.cell(j, l).is_missing())
            .map(|l| dist(m.cell(target.row, l), m.cell(j, l)))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let d = (pairs.iter().sum::<f64>() / pairs.len() as f64).sqrt();
        all.push((j, d));
    }
    all.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap().then(x.0.cmp(&y.0)));
    all.truncate(k);
    all
}

pub fn check_neighbor_oracle(m: &DataMatrix, k: usize) -> Result<(), TestCaseError> {
    for target in m.missing_cells() {
        let set = find_neighbors(m, target, k).map_err(|e| fail(e.to_string()))?;
        let expected = brute_force_neighbors(m, target, k);
        prop_assert_eq!(set.donors.len(), expected.len());
        for (d, (row, dist)) in set.donors.iter().zip(&expected) {
            prop_assert_eq!(d.row, *row);
            prop_assert!((d.distance - dist).abs() <= 1e-12);
        }
        if !set.donors.is_empty() {
            let total: f64 = set.donors.iter().map(|d| d.weight).sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);
            prop_assert!(set.donors.windows(2).all(|w| w[0].distance <= w[1].distance));
        }
    }
    Ok(())
}

fn components(c: &CellValue) -> Vec<f64> {
    match c {
        CellValue::Crisp(x) => vec![*x],
        CellValue::Interval(iv) => vec![iv.lower, iv.upper],
        CellValue::Fuzzy(t) => t.components().to_vec(),
        CellValue::Missing => vec![],
    }
}

/// Imputed cells stay inside the donor range component-wise and keep their
/// ordering invariants; with k = 1 the nearest donor is copied verbatim.
pub fn check_imputation_range(m: &DataMatrix, k: usize) -> Result<(), TestCaseError> {
    let res = impute(m, k).map_err(|e| fail(e.to_string()))?;
    prop_assert!(res.matrix.validate().is_empty());
    prop_assert_eq!(res.trace.len() + res.unimputable.len(), m.missing_cells().len());
    for (at, set) in &res.trace {
        let got = res.matrix.get(*at).unwrap();
        let donors: Vec<&CellValue> = set.donors.iter().map(|d| m.cell(d.row, at.col)).collect();
        let gc = components(got);
        for (i, g) in gc.iter().enumerate() {
            let lo = donors.iter().map(|c| components(c)[i]).fold(f64::INFINITY, f64::min);
            let hi = donors.iter().map(|c| components(c)[i]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo <= *g && *g <= hi, "component {} = {} outside [{}, {}]", i, g, lo, hi);
        }
        if k == 1 {
            prop_assert_eq!(got, donors[0]);
        }
    }
    for at in &res.unimputable {
        prop_assert!(res.matrix.get(*at).unwrap().is_missing());
    }
    Ok(())
}

pub fn check_combine_ordering(cells: &[CellValue], weights: &[f64], kind: ColumnKind) -> Result<(), TestCaseError> {
    let total: f64 = weights.iter().sum();
    let donors: Vec<(CellValue, f64)> = cells.iter().copied().zip(weights.iter().map(|w| w / total)).collect();
    let out = combine_cells(&donors, kind).map_err(|e| fail(e.to_string()))?;
    let check = DataMatrix::unnamed(vec![kind], vec![vec![out]]).unwrap();
    prop_assert!(check.validate().is_empty(), "{:?}", out);
    Ok(())
}

pub fn check_round_trip(m: &DataMatrix) -> Result<(), TestCaseError> {
    let text = typed_csv::serialize(m);
    let back = typed_csv::parse(&text).map_err(|e| fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(back.schema(), m.schema());
    for r in 0..m.rows() {
        for (a, b) in m.row(r).iter().zip(back.row(r)) {
            let (ca, cb) = (components(a), components(b));
            prop_assert_eq!(a.is_missing(), b.is_missing());
            prop_assert_eq!(
                ca.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
                cb.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
            );
        }
    }
    prop_assert_eq!(typed_csv::serialize(&back), text);
    Ok(())
}

/// Two identical benchmark runs serialize to identical bytes.
pub fn check_benchmark_determinism(m: &DataMatrix, seed: u64) -> Result<(), TestCaseError> {
    let complete = fill_missing(m);
    let counts: Vec<usize> = (0..=complete.rows().min(3)).collect();
    let cfg = BenchmarkConfig::new(vec![1, 2], counts, 3, seed);
    let a = hetknn::benchmark(&complete, "p", &cfg).map_err(|e| fail(e.to_string()))?;
    let b = hetknn::benchmark(&complete, "p", &cfg).map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(a.samples_csv(), b.samples_csv());
    prop_assert_eq!(a.summary_csv(), b.summary_csv());
    prop_assert_eq!(a, b);
    Ok(())
}

/// Replaces missing cells by a fixed value of the column's kind.
pub fn fill_missing(m: &DataMatrix) -> DataMatrix {
    let mut out = m.clone();
    for at in m.missing_cells() {
        let v = match m.kind(at.col) {
            ColumnKind::Crisp => CellValue::Crisp(0.5),
            ColumnKind::Interval => CellValue::interval(0.25, 0.75).unwrap(),
            ColumnKind::Fuzzy => CellValue::fuzzy(0.2, 0.5, 0.8).unwrap(),
        };
        out.set(at, v).unwrap();
    }
    out
}
