use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_cubic_core::{analyze, CaseTag, Error};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, EXIT_FAILURE, EXIT_OK};
use crate::fixtures::{self, RowOutcome};
use crate::render::{parse_integer, parse_parameter};
use crate::report::{Report, TableRow};
use crate::sweep::{check_pair, parameter_grid, PairOutcome};

#[derive(Debug, Parser)]
#[command(name = "cyclic-cubic", version, about = "Integral bases and normal integral basis generators of cyclic cubic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one parameter n = n1/n2.
    Compute(ComputeArgs),
    /// One row per coprime n1 in a range, for fixed n2.
    Table(TableArgs),
    /// Recompute and compare reference rows.
    Verify(VerifyArgs),
    /// Property sweep over a parameter box.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Parameter as n1/n2.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n1", "n2"], required_unless_present = "n1")]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "n2")]
    pub n1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "n1")]
    pub n2: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n1_min: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n1_max: String,
    /// Worker threads (default: logical processors).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Fixture CSV (default: the embedded tables).
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 50)]
    pub max_n1: i64,
    #[arg(long, default_value_t = 50)]
    pub max_n2: i64,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Shift r by this amount before building the basis.
    #[arg(long, hide = true, allow_hyphen_values = true, default_value = "0")]
    pub r_offset: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Runs a command, writing results to `out` and diagnostics to `err`, and
/// returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Compute(a) => compute(&a, out),
        Command::Table(a) => table(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Selftest(a) => selftest(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

fn write_csv(out: &mut dyn Write, header: &[String], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (n1, n2) = match (&args.n, &args.n1, &args.n2) {
        (Some(n), _, _) => parse_parameter(n)?,
        (None, Some(a), Some(b)) => (parse_integer(a)?, parse_integer(b)?),
        _ => return Err(CliError::Input("give --n n1/n2 or --n1 and --n2".to_string())),
    };
    let report = Report::compute(&n1, &n2)?;
    match args.format {
        Format::Json => write_json(out, &report)?,
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Csv => {
            let (header, row): (Vec<String>, Vec<String>) = report.columns().into_iter().unzip();
            write_csv(out, &header, &[row])?;
        }
    }
    Ok(EXIT_OK)
}

pub fn table_rows(n2: &BigInt, n1_min: &BigInt, n1_max: &BigInt, jobs: Option<usize>) -> Result<Vec<TableRow>, CliError> {
    if !n2.is_positive() {
        return Err(CliError::Input("--n2 must be positive".to_string()));
    }
    let mut params = Vec::new();
    let mut n1 = n1_min.clone();
    while &n1 <= n1_max {
        if num_integer::Integer::gcd(&n1, n2).is_one() {
            params.push(n1.clone());
        }
        n1 += 1u32;
    }
    let results: Vec<Result<TableRow, CliError>> = with_pool(jobs, || {
        params
            .par_iter()
            .map(|n1| match analyze(n1.clone(), n2.clone()) {
                Ok(an) => Ok(TableRow::from_analysis(&an)),
                Err(Error::Reducible { root }) => Ok(TableRow::skipped(n1, n2, format!("reducible: rational root {root}"))),
                Err(e) => Err(CliError::Core(e)),
            })
            .collect()
    })?;
    results.into_iter().collect()
}

pub fn table(args: &TableArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let rows = table_rows(&parse_integer(&args.n2)?, &parse_integer(&args.n1_min)?, &parse_integer(&args.n1_max)?, args.jobs)?;
    match args.format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let flag = |b: Option<bool>| match b {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "-",
            };
            writeln!(out, "{:>10}  {:<22}  {:<4}  {:<18}  {:<9}  {:<36}  {:<15}  certificate", "(n1,n2)", "D_L", "case", "delta", "(a0,a1)", "alpha", "structure")?;
            for r in &rows {
                let pair = format!("({},{})", r.n1, r.n2);
                if !r.notice.is_empty() {
                    writeln!(out, "{pair:>10}  {}", r.notice)?;
                    continue;
                }
                let cert = [r.integrality, r.trace_zero, r.discriminant, r.index, r.idempotents].map(flag).join(" ");
                writeln!(
                    out,
                    "{pair:>10}  {:<22}  {:<4}  {:<18}  {:<9}  {:<36}  {:<15}  {cert}",
                    r.dl,
                    r.case,
                    r.delta,
                    format!("({},{})", r.a0, r.a1),
                    r.alpha_text(),
                    r.structure
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn verify_fixture_rows(rows: &[fixtures::FixtureRow], jobs: Option<usize>) -> Result<Vec<RowOutcome>, CliError> {
    with_pool(jobs, || rows.par_iter().enumerate().map(|(i, r)| fixtures::verify_row(i + 1, r)).collect())
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    rows: &'a [RowOutcome],
    passed: usize,
    total: usize,
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let rows = match &args.fixtures {
        Some(path) => fixtures::read_rows(File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?)?,
        None => fixtures::embedded_rows(),
    };
    let outcomes = verify_fixture_rows(&rows, args.jobs)?;
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    match args.format {
        Format::Json => write_json(out, &VerifySummary { rows: &outcomes, passed, total: outcomes.len() })?,
        Format::Csv => {
            let header = ["row", "n1", "n2", "status", "field", "expected", "computed"].map(String::from);
            let mut lines = Vec::new();
            for o in &outcomes {
                let base = vec![o.row.to_string(), o.n1.clone(), o.n2.clone()];
                if o.passed() {
                    lines.push([base.clone(), vec!["PASS".into(), String::new(), String::new(), String::new()]].concat());
                }
                for m in &o.mismatches {
                    lines.push([base.clone(), vec!["FAIL".into(), m.field.clone(), m.expected.clone(), m.computed.clone()]].concat());
                }
            }
            write_csv(out, &header, &lines)?;
        }
        Format::Text => {
            for o in &outcomes {
                if o.passed() {
                    writeln!(out, "PASS {}", o.label())?;
                } else {
                    writeln!(out, "FAIL {}", o.label())?;
                    for m in &o.mismatches {
                        writeln!(out, "  {}: expected {}, computed {}", m.field, m.expected, m.computed)?;
                    }
                }
            }
            writeln!(out, "{passed}/{} rows passed", outcomes.len())?;
        }
    }
    Ok(if fixtures::all_passed(&outcomes) { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestSummary {
    pub pairs: usize,
    pub reducible: usize,
    pub cases: BTreeMap<String, usize>,
    pub corollary: usize,
    pub failure: Option<SelftestFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestFailure {
    pub n1: i64,
    pub n2: i64,
    pub message: String,
}

pub fn run_selftest(max_n1: i64, max_n2: i64, r_offset: &BigInt, jobs: Option<usize>) -> Result<SelftestSummary, CliError> {
    let grid = parameter_grid(max_n1, max_n2);
    let outcomes: Vec<PairOutcome> = with_pool(jobs, || grid.par_iter().map(|&(n1, n2)| check_pair(n1, n2, r_offset, true)).collect())?;
    let mut summary = SelftestSummary {
        pairs: grid.len(),
        reducible: 0,
        cases: CaseTag::ALL.iter().map(|t| (t.label().to_string(), 0)).collect(),
        corollary: 0,
        failure: None,
    };
    for (&(n1, n2), o) in grid.iter().zip(outcomes) {
        match o {
            PairOutcome::Reducible => summary.reducible += 1,
            PairOutcome::Passed { tag, corollary } => {
                *summary.cases.entry(tag.label().to_string()).or_default() += 1;
                summary.corollary += usize::from(corollary);
            }
            PairOutcome::Failed(message) => {
                summary.failure = Some(SelftestFailure { n1, n2, message });
                break;
            }
        }
    }
    Ok(summary)
}

pub fn selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.max_n1 < 0 || args.max_n2 < 1 {
        return Err(CliError::Input("need --max-n1 ≥ 0 and --max-n2 ≥ 1".to_string()));
    }
    let r_offset = parse_integer(&args.r_offset)?;
    let s = run_selftest(args.max_n1, args.max_n2, &r_offset, args.jobs)?;
    match args.format {
        Format::Json => write_json(out, &s)?,
        Format::Csv => {
            let mut header = vec!["pairs".to_string(), "reducible".to_string()];
            let mut row = vec![s.pairs.to_string(), s.reducible.to_string()];
            for (k, v) in &s.cases {
                header.push(format!("case_{k}"));
                row.push(v.to_string());
            }
            header.extend(["corollary", "failure"].map(String::from));
            row.push(s.corollary.to_string());
            row.push(s.failure.as_ref().map(|f| format!("({},{}): {}", f.n1, f.n2, f.message)).unwrap_or_default());
            write_csv(out, &header, &[row])?;
        }
        Format::Text => {
            let checked: usize = s.cases.values().sum();
            writeln!(out, "parameters {}  reducible {}  checked {checked}", s.pairs, s.reducible)?;
            for (k, v) in &s.cases {
                writeln!(out, "case {k:<4} {v}")?;
            }
            writeln!(out, "closed forms matched {}", s.corollary)?;
            match &s.failure {
                Some(f) => writeln!(out, "FAIL ({},{}): {}", f.n1, f.n2, f.message)?,
                None => writeln!(out, "all checks passed")?,
            }
        }
    }
    Ok(if s.failure.is_none() { EXIT_OK } else { EXIT_FAILURE })
}
