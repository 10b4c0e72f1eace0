//! Masking benchmark: hide random cells of a complete matrix, impute them
//! back and measure the mean per-cell error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distance::cell_distance;
use crate::error::{Error, Result};
use crate::impute::impute_with;
use crate::model::{CellRef, CellValue, ColumnKind, DataMatrix};
use crate::par::Execution;

/// Where masked cells may fall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaskMode {
    /// Random rows, at most one masked cell per row, each in a random column.
    #[default]
    OnePerRow,
    /// Random rows, all masked in one randomly drawn column.
    SameColumn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskPattern {
    /// Masked cells, sorted by row.
    pub refs: Vec<CellRef>,
    pub seed: u64,
}

/// [`mask_random_with`] in [`MaskMode::OnePerRow`].
pub fn mask_random(matrix: &DataMatrix, count: usize, seed: u64) -> Result<(DataMatrix, MaskPattern)> {
    mask_random_with(matrix, count, seed, MaskMode::OnePerRow)
}

/// Replaces `count` cells of a complete matrix by missing values, never two
/// in the same row. Rows are drawn uniformly without replacement.
pub fn mask_random_with(
    matrix: &DataMatrix,
    count: usize,
    seed: u64,
    mode: MaskMode,
) -> Result<(DataMatrix, MaskPattern)> {
    matrix.require_complete()?;
    if count > matrix.rows() {
        return Err(Error::MaskCount {
            count,
            rows: matrix.rows(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = index::sample(&mut rng, matrix.rows(), count).into_vec();
    rows.sort_unstable();
    let m = matrix.cols();
    let shared_col = rng.random_range(0..m);
    let refs: Vec<CellRef> = rows
        .into_iter()
        .map(|row| {
            let col = match mode {
                MaskMode::OnePerRow => rng.random_range(0..m),
                MaskMode::SameColumn => shared_col,
            };
            CellRef::new(row, col)
        })
        .collect();
    let mut masked = matrix.clone();
    for &at in &refs {
        masked.set(at, CellValue::Missing)?;
    }
    Ok((masked, MaskPattern { refs, seed }))
}

/// Type-dispatched distance between a true and an imputed cell.
pub fn cell_error(original: &CellValue, imputed: &CellValue, kind: ColumnKind) -> Result<f64> {
    cell_distance(original, imputed, kind)
}

/// Mean cell error over all `n * m` cells.
pub fn matrix_error(original: &DataMatrix, imputed: &DataMatrix) -> Result<f64> {
    if original.rows() != imputed.rows() || original.schema() != imputed.schema() {
        return Err(Error::ShapeMismatch);
    }
    let mut total = 0.0;
    for r in 0..original.rows() {
        for (l, &kind) in original.schema().iter().enumerate() {
            total += cell_error(original.cell(r, l), imputed.cell(r, l), kind)?;
        }
    }
    Ok(total / (original.rows() * original.cols()) as f64)
}

/// Box-plot statistics of a sample set. Quartiles interpolate linearly
/// between order statistics (R's type 7).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl Summary {
    /// `None` for an empty sample set.
    pub fn from_samples(samples: &[f64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            count: sorted.len(),
            min: sorted[0],
            q1: quantile_sorted(&sorted, 0.25),
            median: quantile_sorted(&sorted, 0.5),
            q3: quantile_sorted(&sorted, 0.75),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        })
    }
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkConfig {
    pub k_values: Vec<usize>,
    pub missing_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: MaskMode,
}

impl BenchmarkConfig {
    pub fn new(k_values: Vec<usize>, missing_counts: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            k_values,
            missing_counts,
            trials,
            seed,
            mode: MaskMode::OnePerRow,
        }
    }
}

/// One mask/impute/score run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub k: usize,
    pub missing_count: usize,
    pub trial: usize,
    /// `None` when some masked cell could not be imputed.
    pub error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub dataset_name: String,
    /// Every trial, ordered by `(k, missing_count, trial)`.
    pub records: Vec<TrialRecord>,
    /// Errors of imputable trials per `(k, missing_count)`.
    pub samples: BTreeMap<(usize, usize), Vec<f64>>,
    pub summaries: BTreeMap<(usize, usize), Summary>,
    /// Summary over all missing counts for each `k`.
    pub per_k: BTreeMap<usize, Summary>,
    /// Trials excluded from the summaries per `(k, missing_count)`.
    pub unimputable_trials: BTreeMap<(usize, usize), usize>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of one trial, a pure function of the run seed and the trial key.
pub fn trial_seed(seed: u64, k: usize, missing_count: usize, trial: usize) -> u64 {
    [k, missing_count, trial]
        .into_iter()
        .fold(splitmix64(seed), |h, v| splitmix64(h ^ v as u64))
}

/// Runs `trials` masked imputations for every `(k, missing_count)` pair.
pub fn benchmark(matrix: &DataMatrix, name: &str, config: &BenchmarkConfig) -> Result<BenchmarkReport> {
    benchmark_with(matrix, name, config, Execution::default())
}

/// [`benchmark`] with an explicit execution mode. The report is identical
/// for every mode.
pub fn benchmark_with(
    matrix: &DataMatrix,
    name: &str,
    config: &BenchmarkConfig,
    exec: Execution,
) -> Result<BenchmarkReport> {
    matrix.require_complete()?;
    if let Some(v) = matrix.validate().first() {
        return Err(Error::InvalidValue(v.to_string()));
    }
    if config.trials == 0 {
        return Err(Error::InvalidValue("trials must be at least 1".into()));
    }
    if config.k_values.contains(&0) {
        return Err(Error::InvalidK);
    }
    if let Some(&count) = config.missing_counts.iter().find(|&&c| c > matrix.rows()) {
        return Err(Error::MaskCount {
            count,
            rows: matrix.rows(),
        });
    }

    let mut keys = Vec::new();
    for &k in &config.k_values {
        for &count in &config.missing_counts {
            for trial in 0..config.trials {
                keys.push((k, count, trial));
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();

    // Trials are the parallel unit; each imputation runs sequentially inside.
    let outcomes = exec.map(&keys, |&(k, count, trial)| -> Result<TrialRecord> {
        let seed = trial_seed(config.seed, k, count, trial);
        let (masked, _) = mask_random_with(matrix, count, seed, config.mode)?;
        let result = impute_with(&masked, k, Execution::Sequential)?;
        let error = if result.unimputable.is_empty() {
            Some(matrix_error(matrix, &result.matrix)?)
        } else {
            None
        };
        Ok(TrialRecord {
            k,
            missing_count: count,
            trial,
            error,
        })
    });
    let records = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let mut samples: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    let mut by_k: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut unimputable_trials = BTreeMap::new();
    for rec in &records {
        let key = (rec.k, rec.missing_count);
        let bucket = samples.entry(key).or_default();
        let flagged = unimputable_trials.entry(key).or_insert(0usize);
        match rec.error {
            Some(e) => {
                bucket.push(e);
                by_k.entry(rec.k).or_default().push(e);
            }
            None => *flagged += 1,
        }
    }
    let summaries = samples
        .iter()
        .filter_map(|(key, s)| Summary::from_samples(s).map(|sum| (*key, sum)))
        .collect();
    let per_k = by_k
        .iter()
        .filter_map(|(k, s)| Summary::from_samples(s).map(|sum| (*k, sum)))
        .collect();

    Ok(BenchmarkReport {
        dataset_name: name.to_string(),
        records,
        samples,
        summaries,
        per_k,
        unimputable_trials,
    })
}

impl BenchmarkReport {
    /// Raw table: `k,missing_count,trial,error,imputable`. Unimputable
    /// trials have an empty error field.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("k,missing_count,trial,error,imputable\n");
        for r in &self.records {
            let _ = match r.error {
                Some(e) => writeln!(out, "{},{},{},{},true", r.k, r.missing_count, r.trial, e),
                None => writeln!(out, "{},{},{},,false", r.k, r.missing_count, r.trial),
            };
        }
        out
    }

    /// Per-k table: `k,min,q1,median,q3,max,mean`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("k,min,q1,median,q3,max,mean\n");
        for (k, s) in &self.per_k {
            let _ = writeln!(out, "{k},{},{},{},{},{},{}", s.min, s.q1, s.median, s.q3, s.max, s.mean);
        }
        out
    }
}
