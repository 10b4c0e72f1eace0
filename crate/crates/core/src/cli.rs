//! Command-line front end.
//!
//! Exit codes: 0 success, 1 data error (unreadable or invalid input,
//! unimputable cells), 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::distance::compare_rows;
use crate::error::Error;
use crate::eval::{benchmark_with, BenchmarkConfig, MaskMode};
use crate::fixtures::{fixture, FIXTURE_NAMES};
use crate::impute::impute;
use crate::model::{CellRef, CellValue, DataMatrix};
use crate::par::Execution;
use crate::typed_csv::{parse, parse_lenient, serialize};

#[derive(Debug, Parser)]
#[command(name = "hetknn", version, about = "k-NN imputation for crisp, interval and fuzzy tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fill every missing cell of a typed CSV file.
    Impute(ImputeArgs),
    /// Run the masking benchmark and write error tables.
    Benchmark(BenchmarkArgs),
    /// Print the distance between two rows and its per-column terms.
    Distance(DistanceArgs),
    /// Check a typed CSV file against the cell and schema invariants.
    Validate(ValidateArgs),
    /// Export the embedded case-study matrices.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Args)]
struct ImputeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// CSV listing donor rows, distances and weights per imputed cell.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "fixture"])))]
struct BenchmarkArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k_min: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    #[arg(long, default_value_t = 1)]
    nan_min: u64,
    #[arg(long)]
    nan_max: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Raw per-trial table.
    #[arg(long)]
    output: PathBuf,
    /// Per-k summary table; printed to stdout when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Put all masked cells of a trial in one column.
    #[arg(long)]
    same_column: bool,
    /// Disable data-parallel trial evaluation.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[arg(long)]
    input: PathBuf,
    /// Two distinct 0-based row indices, e.g. `2,0`.
    #[arg(long)]
    rows: String,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct FixturesArgs {
    /// Fixture to export; all of them when writing to a directory.
    #[arg(long)]
    name: Option<String>,
    /// File to write the named fixture to (stdout when omitted).
    #[arg(long, conflicts_with = "output_dir")]
    output: Option<PathBuf>,
    /// Directory receiving `<name>.csv` files.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Blank out the 0-based cell `row,col` before writing; repeatable.
    #[arg(long)]
    mask: Vec<String>,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Data(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Impute(a) => cmd_impute(a, err),
        Command::Benchmark(a) => cmd_benchmark(a, out, err),
        Command::Distance(a) => cmd_distance(a, out),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Fixtures(a) => cmd_fixtures(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let prefix = if matches!(f, Failure::Usage(_)) { "usage error" } else { "error" };
            let (Failure::Usage(msg) | Failure::Data(msg)) = &f;
            let _ = writeln!(err, "{prefix}: {msg}");
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<DataMatrix, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// 1-based file position of a 0-based cell; line 1 is the header.
fn position(at: CellRef) -> String {
    format!("line {}, column {}", at.row + 2, at.col + 1)
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("{what} expects two indices like `2,0`, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn cmd_impute(a: ImputeArgs, err: &mut dyn Write) -> CliResult {
    let matrix = load(&a.input)?;
    let result = impute(&matrix, a.k as usize)?;
    write(&a.output, &serialize(&result.matrix))?;
    if let Some(path) = &a.trace {
        let mut text = String::from("row,col,donor_row,distance,weight\n");
        for (at, set) in &result.trace {
            for d in &set.donors {
                let _ = writeln!(text, "{},{},{},{},{}", at.row, at.col, d.row, d.distance, d.weight);
            }
        }
        write(path, &text)?;
    }
    for at in &result.unimputable {
        let _ = writeln!(err, "unimputable cell at {}: no comparable donor", position(*at));
    }
    Ok(if result.unimputable.is_empty() { 0 } else { 1 })
}

fn cmd_benchmark(a: BenchmarkArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let (matrix, name) = match (&a.input, &a.fixture) {
        (Some(path), _) => {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            (load(path)?, name)
        }
        (None, Some(name)) => (fixture(name).map_err(|e| Failure::Usage(e.to_string()))?, name.clone()),
        (None, None) => unreachable!("clap requires a source"),
    };
    if a.k_min > a.k_max {
        return Err(Failure::Usage(format!("--k-min {} exceeds --k-max {}", a.k_min, a.k_max)));
    }
    if a.nan_min > a.nan_max {
        return Err(Failure::Usage(format!(
            "--nan-min {} exceeds --nan-max {}",
            a.nan_min, a.nan_max
        )));
    }
    if a.nan_max as usize > matrix.rows() {
        return Err(Failure::Usage(format!(
            "--nan-max {} exceeds the {} rows of {name} (at most one masked cell per row)",
            a.nan_max,
            matrix.rows()
        )));
    }
    if let Some(at) = matrix.missing_cells().first() {
        return Err(Failure::Data(format!(
            "benchmark needs a complete matrix; missing cell at {}",
            position(*at)
        )));
    }
    let mut config = BenchmarkConfig::new(
        (a.k_min as usize..=a.k_max as usize).collect(),
        (a.nan_min as usize..=a.nan_max as usize).collect(),
        a.trials as usize,
        a.seed,
    );
    if a.same_column {
        config.mode = MaskMode::SameColumn;
    }
    let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let report = benchmark_with(&matrix, &name, &config, exec)?;

    write(&a.output, &report.samples_csv())?;
    let summary = report.summary_csv();
    match &a.summary {
        Some(path) => write(path, &summary)?,
        None => {
            let _ = out.write_all(summary.as_bytes());
        }
    }
    let flagged: usize = report.unimputable_trials.values().sum();
    if flagged > 0 {
        let _ = writeln!(err, "{flagged} trial(s) left cells unimputable and were excluded from summaries");
    }
    Ok(0)
}

fn cmd_distance(a: DistanceArgs, out: &mut dyn Write) -> CliResult {
    let (i, j) = parse_pair(&a.rows, "--rows")?;
    let matrix = load(&a.input)?;
    let cmp = compare_rows(&matrix, i, j).map_err(|e| match e {
        Error::SameRow(_) | Error::RowOutOfBounds { .. } => Failure::Usage(e.to_string()),
        other => other.into(),
    })?;
    let mut text = String::new();
    match cmp.distance {
        Some(d) => {
            let _ = writeln!(text, "distance: {}", d.value);
            let _ = writeln!(text, "shared_features: {}", d.shared_features);
        }
        None => text.push_str("incomparable\n"),
    }
    for ((name, kind), cell) in matrix.column_names().iter().zip(matrix.schema()).zip(&cmp.per_column) {
        let _ = match cell {
            Some(d) => writeln!(text, "  {name} ({kind}): {d}"),
            None => writeln!(text, "  {name} ({kind}): missing"),
        };
    }
    let _ = out.write_all(text.as_bytes());
    Ok(0)
}

fn cmd_validate(a: ValidateArgs, out: &mut dyn Write) -> CliResult {
    let text = read(&a.input)?;
    let matrix = parse_lenient(&text).map_err(|e| Failure::Data(format!("{}: {e}", a.input.display())))?;
    let violations = matrix.validate();
    if violations.is_empty() {
        let _ = writeln!(out, "ok: {} rows, {} columns", matrix.rows(), matrix.cols());
        return Ok(0);
    }
    for v in &violations {
        let _ = writeln!(out, "{}: {}", position(v.cell), v.kind);
    }
    Ok(1)
}

fn cmd_fixtures(a: FixturesArgs, out: &mut dyn Write) -> CliResult {
    let names: Vec<&str> = match &a.name {
        Some(n) => vec![n.as_str()],
        None if a.output_dir.is_some() => FIXTURE_NAMES.to_vec(),
        None => {
            let _ = writeln!(out, "{}", FIXTURE_NAMES.join("\n"));
            return Ok(0);
        }
    };
    if !a.mask.is_empty() && names.len() != 1 {
        return Err(Failure::Usage("--mask needs --name".into()));
    }
    for name in names {
        let mut m = fixture(name).map_err(|e| Failure::Usage(e.to_string()))?;
        for spec in &a.mask {
            let (row, col) = parse_pair(spec, "--mask")?;
            m.set(CellRef::new(row, col), CellValue::Missing)
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let text = serialize(&m);
        match (&a.output_dir, &a.output) {
            (Some(dir), _) => {
                fs::create_dir_all(dir).map_err(|e| Failure::Data(format!("cannot create {}: {e}", dir.display())))?;
                write(&dir.join(format!("{name}.csv")), &text)?;
            }
            (None, Some(path)) => write(path, &text)?,
            (None, None) => {
                let _ = out.write_all(text.as_bytes());
            }
        }
    }
    Ok(0)
}
