//! The `plap` command line.
//!
//! Maps and complexes are JSON files (see [`crate::complex::io`]); the
//! embedded examples are addressed as `fixture:<name>`. Exit codes: 0 on
//! success, 1 on invalid input or usage, 2 when an internal cross-check
//! fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{check_weight_preserving_all, WeightReport};
use crate::complex::io::{parse_complex, read_complex, read_map};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::verify::{verify_schur_properties_with, SchurPropertyReport, MAX_SIZE};
use crate::linalg::{ExactMatrix, FloatMatrix};
use crate::oracle::{cochain_duality_check, direct_laplacian, oracle_persistent_betti};
use crate::plap::{laplacian_report, LaplacianReport, SpectrumKind};
use crate::tower::{monotonicity_report_with, MonotonicityReport, Tower, Verdict, WpStatus};

#[derive(Debug, Parser)]
#[command(
    name = "plap",
    version,
    about = "Persistent Laplacians of weight-preserving simplicial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Arithmetic backend; betti and laplacian default to exact, spectra are
    /// always floating point.
    #[arg(long, value_enum, global = true)]
    backend: Option<Backend>,
    /// Tolerance for zero eigenvalues and eigenvalue comparisons.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads for per-dimension work.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Cross-check results against the independent oracles; exit 2 on mismatch.
    #[arg(long, global = true)]
    self_check: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a complex or a map.
    Validate(ValidateArgs),
    /// Report weight preservation of a map in every dimension.
    CheckWp(MapArgs),
    /// Matrix of a persistent Laplacian in the basis of Im(f_q).
    Laplacian(LaplacianArgs),
    /// Persistent Betti numbers and persistent Laplacian nullities.
    Betti(QArgs),
    /// Eigenvalues of a persistent Laplacian.
    Spectrum(SpectrumArgs),
    /// Weight preservation and eigenvalue monotonicity along a tower of maps.
    Tower(TowerArgs),
    /// Independent verifiers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// List the embedded fixtures or write them to a directory.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Persistent Betti numbers from homology ranks.
    Betti(QArgs),
    /// Compare against Schur restrictions built from definitions; without
    /// --map, run the randomized Schur complement identities.
    Schur(SchurArgs),
    /// Compare against the cochain-side construction.
    Cochain(QArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ValidateArgs {
    /// Complex file or fixture:<file stem>.
    #[arg(long)]
    complex: Option<String>,
    /// Map file or fixture:<name>.
    #[arg(long)]
    map: Option<String>,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Map file or fixture:<name>.
    #[arg(long)]
    map: String,
}

#[derive(Debug, Args)]
struct QArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Dimension `N`, or a range `A-B`, `A..=B` (inclusive) or `A..B`.
    /// Defaults to every dimension of the domain.
    #[arg(long)]
    q: Option<QSpec>,
}

#[derive(Debug, Args)]
struct LaplacianArgs {
    #[command(flatten)]
    q: QArgs,
    #[arg(long, value_enum, default_value = "full")]
    which: Which,
    /// Emit every intermediate matrix (JSON only).
    #[arg(long)]
    details: bool,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    q: QArgs,
    #[arg(long, value_enum, default_value = "full")]
    which: Which,
}

#[derive(Debug, Args)]
struct TowerArgs {
    /// Map files (or fixtures) K0 -> K1 -> ... in order.
    #[arg(required = true)]
    maps: Vec<String>,
    #[arg(long)]
    q: Option<QSpec>,
    #[arg(long, value_enum, default_value = "monotonicity")]
    report: TowerReportKind,
}

#[derive(Debug, Args)]
struct SchurArgs {
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    q: Option<QSpec>,
    /// Random instances for the identity checks.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Debug, Args)]
struct FixturesArgs {
    /// Write every fixture file into this directory.
    #[arg(long)]
    write: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Which {
    Up,
    Down,
    Full,
    EssUp,
}

impl From<Which> for SpectrumKind {
    fn from(which: Which) -> Self {
        match which {
            Which::Up => SpectrumKind::Up,
            Which::Down => SpectrumKind::Down,
            Which::Full => SpectrumKind::Full,
            Which::EssUp => SpectrumKind::EssentialUp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TowerReportKind {
    Monotonicity,
    Wp,
}

/// Dimensions requested with `--q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSpec {
    pub start: usize,
    pub end: usize,
    single: bool,
}

impl QSpec {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for QSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        };
        let range = |a: usize, b: usize| {
            if a > b {
                Err(format!("empty dimension range {s:?}"))
            } else {
                Ok(QSpec {
                    start: a,
                    end: b,
                    single: false,
                })
            }
        };
        if let Some((a, b)) = s.split_once("..=") {
            range(num(a)?, num(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            let b = num(b)?;
            if b == 0 {
                return Err(format!("empty dimension range {s:?}"));
            }
            range(num(a)?, b - 1)
        } else if let Some((a, b)) = s.split_once('-') {
            range(num(a)?, num(b)?)
        } else {
            let q = num(s)?;
            Ok(QSpec {
                start: q,
                end: q,
                single: true,
            })
        }
    }
}

/// Rendered command output plus the exit status it implies.
struct Output {
    json: String,
    csv: Option<Vec<Vec<String>>>,
    pretty: String,
    /// Set when an internal cross-check failed.
    invariant_failure: Option<String>,
}

impl Output {
    fn new(json: String, csv: Option<Vec<Vec<String>>>, pretty: String) -> Self {
        Output {
            json,
            csv,
            pretty,
            invariant_failure: None,
        }
    }

    fn fail_if(mut self, failed: bool, message: impl FnOnce() -> String) -> Self {
        if failed {
            self.invariant_failure = Some(message());
        }
        self
    }
}

/// Invalid input or usage; exit code 1.
struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let written = match cli.format {
                Format::Json => writeln!(out, "{}", output.json),
                Format::Pretty => write!(out, "{}", output.pretty),
                Format::Csv => match &output.csv {
                    Some(rows) => write!(out, "{}", csv_text(rows)),
                    None => {
                        let _ = writeln!(err, "error: csv output is not available for this command; use --format json");
                        return 1;
                    }
                },
            };
            if written.is_err() {
                return 1;
            }
            match output.invariant_failure {
                Some(message) => {
                    let _ = writeln!(err, "invariant check failed: {message}");
                    2
                }
                None => 0,
            }
        }
        Err(CliError(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn execute(cli: &Cli) -> CliResult<Output> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError(format!("--tol must be positive, got {}", cli.tol)));
    }
    if cli.jobs == 0 {
        return Err(CliError("--jobs must be at least 1".into()));
    }
    match &cli.command {
        Command::Validate(args) => validate(args),
        Command::CheckWp(args) => check_wp(&load_map(&args.map)?),
        Command::Laplacian(args) => laplacian(cli, args),
        Command::Betti(args) => betti(cli, args),
        Command::Spectrum(args) => spectrum(cli, args),
        Command::Tower(args) => tower(cli, args),
        Command::Oracle(OracleCommand::Betti(args)) => oracle_betti(cli, args),
        Command::Oracle(OracleCommand::Schur(args)) => oracle_schur(cli, args),
        Command::Oracle(OracleCommand::Cochain(args)) => oracle_cochain(cli, args),
        Command::Fixtures(args) => fixtures_command(args),
    }
}

const FIXTURE_PREFIX: &str = "fixture:";

pub fn load_map(source: &str) -> Result<SimplicialMap> {
    match source.strip_prefix(FIXTURE_PREFIX) {
        Some(name) => fixtures::fixture_map(name),
        None => read_map(Path::new(source)),
    }
}

pub fn load_complex(source: &str) -> Result<SimplicialComplex> {
    match source.strip_prefix(FIXTURE_PREFIX) {
        Some(name) => {
            let file = format!("{name}.json");
            let text = fixtures::FILES
                .iter()
                .find(|(n, _)| *n == file)
                .map(|(_, t)| *t)
                .ok_or_else(|| Error::Parse(format!("unknown fixture complex {name:?}")))?;
            parse_complex(text)
        }
        None => read_complex(Path::new(source)),
    }
}

fn dims(spec: &Option<QSpec>, f: &SimplicialMap) -> (Vec<usize>, bool) {
    match spec {
        Some(spec) => (spec.values(), spec.single),
        None => ((0..=f.domain().dim().unwrap_or(0)).collect(), false),
    }
}

/// Evaluates `work` for every dimension on `jobs` threads, keeping order.
fn per_q<T: Send>(
    qs: &[usize],
    jobs: usize,
    work: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if jobs <= 1 || qs.len() <= 1 {
        return qs.iter().map(|&q| work(q)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start {jobs} threads: {e}")))?;
    pool.install(|| qs.par_iter().map(|&q| work(q)).collect())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("report serializes")
}

/// One object for a single dimension, an array otherwise.
fn records_json<T: Serialize>(records: &[T], single: bool) -> String {
    if single && records.len() == 1 {
        to_json(&records[0])
    } else {
        to_json(records)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_text(rows: &[Vec<String>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct ComplexSummary {
    vertices: usize,
    dim: Option<usize>,
    simplices: Vec<usize>,
}

fn summary(k: &SimplicialComplex) -> ComplexSummary {
    let top = k.dim().unwrap_or(0);
    ComplexSummary {
        vertices: k.vertices().len(),
        dim: k.dim(),
        simplices: (0..=top).map(|q| k.n_simplices(q)).collect(),
    }
}

#[derive(Serialize)]
struct MapSummary {
    domain: ComplexSummary,
    codomain: ComplexSummary,
    weight_preserving: bool,
    surjective: bool,
    inclusion: bool,
}

fn validate(args: &ValidateArgs) -> CliResult<Output> {
    if let Some(source) = &args.complex {
        let k = load_complex(source)?;
        let s = summary(&k);
        let pretty = format!(
            "valid complex: {} vertices, simplex counts {:?}\n",
            s.vertices, s.simplices
        );
        let mut rows = vec![header(&["dim", "simplices"])];
        rows.extend(
            s.simplices
                .iter()
                .enumerate()
                .map(|(q, n)| vec![q.to_string(), n.to_string()]),
        );
        return Ok(Output::new(to_json(&s), Some(rows), pretty));
    }
    let source = args
        .map
        .as_deref()
        .expect("clap requires --complex or --map");
    let f = load_map(source)?;
    let s = MapSummary {
        domain: summary(f.domain()),
        codomain: summary(f.codomain()),
        weight_preserving: crate::chains::is_weight_preserving(&f),
        surjective: f.is_surjective(),
        inclusion: f.is_inclusion(),
    };
    let pretty = format!(
        "valid simplicial map: {} -> {} vertices; weight preserving: {}, surjective: {}, inclusion: {}\n",
        s.domain.vertices, s.codomain.vertices, s.weight_preserving, s.surjective, s.inclusion
    );
    Ok(Output::new(to_json(&s), None, pretty))
}

#[derive(Serialize)]
struct WpOut {
    weight_preserving: bool,
    dimensions: Vec<WeightReport>,
}

fn check_wp(f: &SimplicialMap) -> CliResult<Output> {
    let dimensions = check_weight_preserving_all(f);
    let report = WpOut {
        weight_preserving: dimensions.iter().all(WeightReport::is_ok),
        dimensions,
    };
    let mut rows = vec![header(&["q", "simplex", "codomain_weight", "preimage_sum"])];
    let mut pretty = format!("weight preserving: {}\n", report.weight_preserving);
    for d in &report.dimensions {
        for v in &d.violations {
            rows.push(vec![
                d.q.to_string(),
                v.simplex.clone(),
                v.codomain_weight.to_string(),
                v.preimage_sum.to_string(),
            ]);
            pretty += &format!(
                "  q={}: {} has weight {} but its preimages sum to {}\n",
                d.q, v.simplex, v.codomain_weight, v.preimage_sum
            );
        }
    }
    Ok(Output::new(to_json(&report), Some(rows), pretty))
}

#[derive(Serialize)]
#[serde(untagged)]
enum MatrixOut {
    Exact(ExactMatrix),
    Float(FloatMatrix),
}

impl MatrixOut {
    fn rows(&self) -> Vec<Vec<String>> {
        match self {
            MatrixOut::Exact(m) => m.to_string_rows(),
            MatrixOut::Float(m) => (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct LaplacianOut {
    q: usize,
    which: Which,
    /// Hit simplices indexing the rows of `matrix` (of `r1` for ess-up).
    basis: Vec<String>,
    weights: Vec<String>,
    /// For ess-up, the columns spanning `f_q(ker ∂_q^K)` in which `matrix` is written.
    #[serde(rename = "R1", skip_serializing_if = "Option::is_none")]
    r1: Option<ExactMatrix>,
    matrix: MatrixOut,
}

fn self_check_report(f: &SimplicialMap, report: &LaplacianReport) -> Result<Option<String>> {
    let q = report.q;
    let betti = oracle_persistent_betti(f, q);
    if betti != report.nullity {
        return Ok(Some(format!(
            "q={q}: nullity {} differs from persistent Betti number {betti}",
            report.nullity
        )));
    }
    let direct = direct_laplacian(f, q)?;
    if direct.down != report.down.matrix || direct.up != report.up.matrix {
        return Ok(Some(format!(
            "q={q}: Schur construction differs from the direct restriction"
        )));
    }
    Ok(None)
}

fn reports(
    cli: &Cli,
    args: &QArgs,
) -> CliResult<(SimplicialMap, Vec<LaplacianReport>, bool, Option<String>)> {
    let f = load_map(&args.map.map)?;
    let (qs, single) = dims(&args.q, &f);
    let results = per_q(&qs, cli.jobs, |q| {
        let report = laplacian_report(&f, q)?;
        let failure = if cli.self_check {
            self_check_report(&f, &report)?
        } else {
            None
        };
        Ok((report, failure))
    })?;
    let failure = results.iter().find_map(|(_, fail)| fail.clone());
    Ok((
        f,
        results.into_iter().map(|(r, _)| r).collect(),
        single,
        failure,
    ))
}

fn laplacian(cli: &Cli, args: &LaplacianArgs) -> CliResult<Output> {
    let (_, reports, single, failure) = reports(cli, &args.q)?;
    let float = cli.backend == Some(Backend::Float);
    if args.details {
        if cli.format != Format::Json {
            return Err(CliError(
                "--details is only available with --format json".into(),
            ));
        }
        return Ok(
            Output::new(records_json(&reports, single), None, String::new())
                .fail_if(failure.is_some(), || failure.clone().unwrap_or_default()),
        );
    }
    let outs: Vec<LaplacianOut> = reports
        .iter()
        .map(|r| {
            let (matrix, r1) = match args.which {
                Which::Up => (r.up.matrix.clone(), None),
                Which::Down => (r.down.matrix.clone(), None),
                Which::Full => (r.full.clone(), None),
                Which::EssUp => (r.up.sch_q.clone(), Some(r.up.r1.clone())),
            };
            LaplacianOut {
                q: r.q,
                which: args.which,
                basis: r.basis.clone(),
                weights: r.weights.iter().map(ToString::to_string).collect(),
                r1,
                matrix: if float {
                    MatrixOut::Float(matrix.to_float())
                } else {
                    MatrixOut::Exact(matrix)
                },
            }
        })
        .collect();
    let mut rows = vec![header(&["q", "row", "col", "value"])];
    let mut pretty = String::new();
    for o in &outs {
        let cells = o.matrix.rows();
        for (i, row) in cells.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                rows.push(vec![
                    o.q.to_string(),
                    i.to_string(),
                    j.to_string(),
                    v.clone(),
                ]);
            }
        }
        pretty += &format!("q={} {:?} basis ({})\n", o.q, o.which, o.basis.join(" "));
        if cells.is_empty() {
            pretty += "  (empty)\n";
        }
        for row in cells {
            pretty += &format!("  [{}]\n", row.join(", "));
        }
    }
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty)
        .fail_if(failure.is_some(), || failure.clone().unwrap_or_default()))
}

#[derive(Serialize)]
struct BettiOut {
    q: usize,
    betti: usize,
    nullity: usize,
}

fn betti(cli: &Cli, args: &QArgs) -> CliResult<Output> {
    if cli.backend == Some(Backend::Float) {
        return Err(CliError(
            "betti numbers are computed in exact arithmetic only; drop --backend float".into(),
        ));
    }
    let f = load_map(&args.map.map)?;
    let (qs, single) = dims(&args.q, &f);
    let outs = per_q(&qs, cli.jobs, |q| {
        let report = laplacian_report(&f, q)?;
        Ok(BettiOut {
            q,
            betti: oracle_persistent_betti(&f, q),
            nullity: report.nullity,
        })
    })?;
    let mismatch = outs.iter().find(|o| o.betti != o.nullity).map(|o| {
        format!(
            "q={}: nullity {} differs from persistent Betti number {}",
            o.q, o.nullity, o.betti
        )
    });
    let mut rows = vec![header(&["q", "betti", "nullity"])];
    let mut pretty = String::new();
    for o in &outs {
        rows.push(vec![
            o.q.to_string(),
            o.betti.to_string(),
            o.nullity.to_string(),
        ]);
        pretty += &format!("q={}: betti {} nullity {}\n", o.q, o.betti, o.nullity);
    }
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty)
        .fail_if(cli.self_check && mismatch.is_some(), || {
            mismatch.clone().unwrap_or_default()
        }))
}

#[derive(Serialize)]
struct SpectrumOut {
    q: usize,
    which: Which,
    eigenvalues: Vec<f64>,
    /// Eigenvalues with absolute value at most `--tol`.
    zero_count: usize,
}

fn spectrum(cli: &Cli, args: &SpectrumArgs) -> CliResult<Output> {
    if cli.backend == Some(Backend::Exact) {
        return Err(CliError(
            "spectra are computed in floating point from the exact matrices; drop --backend exact"
                .into(),
        ));
    }
    let (_, reports, single, mut failure) = reports(cli, &args.q)?;
    let mut outs = Vec::with_capacity(reports.len());
    for r in &reports {
        let s = r.spectrum(args.which.into())?;
        let zero_count = s.zero_count(cli.tol);
        if cli.self_check
            && args.which == Which::Full
            && zero_count != r.nullity
            && failure.is_none()
        {
            failure = Some(format!(
                "q={}: {zero_count} zero eigenvalues but exact nullity {}",
                r.q, r.nullity
            ));
        }
        outs.push(SpectrumOut {
            q: r.q,
            which: args.which,
            eigenvalues: s.eigenvalues,
            zero_count,
        });
    }
    let mut rows = vec![header(&["q", "which", "k", "eigenvalue"])];
    let mut pretty = String::new();
    for o in &outs {
        let which = format!("{:?}", o.which).to_lowercase();
        for (k, v) in o.eigenvalues.iter().enumerate() {
            rows.push(vec![
                o.q.to_string(),
                which.clone(),
                (k + 1).to_string(),
                v.to_string(),
            ]);
        }
        pretty += &format!("q={} {which}: {:?}\n", o.q, o.eigenvalues);
    }
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty)
        .fail_if(failure.is_some(), || failure.clone().unwrap_or_default()))
}

fn verdict_cells(v: &Verdict) -> [String; 4] {
    match v {
        Verdict::Pass { .. } => ["pass".into(), String::new(), String::new(), String::new()],
        Verdict::Fail { k, lhs, rhs } => [
            "fail".into(),
            k.to_string(),
            lhs.to_string(),
            rhs.to_string(),
        ],
        Verdict::Skipped { reason } => [
            format!("skipped: {reason}"),
            String::new(),
            String::new(),
            String::new(),
        ],
    }
}

fn tower(cli: &Cli, args: &TowerArgs) -> CliResult<Output> {
    let maps = args
        .maps
        .iter()
        .map(|m| load_map(m))
        .collect::<Result<Vec<_>>>()?;
    let tower = Tower::new(maps)?;
    if args.report == TowerReportKind::Wp {
        let status: Vec<WpStatus> = tower.wp_status()?;
        let mut rows = vec![header(&["from", "to", "weight_preserving", "failing_dims"])];
        let mut pretty = String::new();
        for s in &status {
            let dims = s
                .failing_dims
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            rows.push(vec![
                s.from.to_string(),
                s.to.to_string(),
                s.weight_preserving.to_string(),
                dims.clone(),
            ]);
            pretty += &format!(
                "K{} -> K{}: weight preserving {}{}\n",
                s.from,
                s.to,
                s.weight_preserving,
                if dims.is_empty() {
                    String::new()
                } else {
                    format!(" (fails in dimensions {dims})")
                }
            );
        }
        return Ok(Output::new(to_json(&status), Some(rows), pretty));
    }
    let (qs, single) = match &args.q {
        Some(spec) => (spec.values(), spec.single),
        None => (
            (0..=tower.maps()[0].domain().dim().unwrap_or(0)).collect(),
            false,
        ),
    };
    let reports: Vec<MonotonicityReport> = per_q(&qs, cli.jobs, |q| {
        monotonicity_report_with(&tower, q, cli.tol)
    })?;
    let mut rows = vec![header(&[
        "q",
        "triple",
        "theorem",
        "statement",
        "asserted",
        "status",
        "k",
        "lhs",
        "rhs",
    ])];
    let mut pretty = String::new();
    for r in &reports {
        for t in &r.triples {
            pretty += &format!(
                "q={} K{} -> K{} -> K{}\n",
                r.q,
                t.index,
                t.index + 1,
                t.index + 2
            );
            for (key, values) in &t.spectra {
                pretty += &format!("  {key}: {values:?}\n");
            }
            for c in &t.checks {
                let cells = verdict_cells(&c.verdict);
                let theorem = serde_json::to_value(c.theorem).expect("serializes");
                let theorem = theorem.as_str().unwrap_or_default().to_string();
                pretty += &format!(
                    "  [{}] {}{}: {}\n",
                    theorem,
                    c.statement,
                    if c.asserted { "" } else { " (not asserted)" },
                    cells[0]
                );
                let mut row = vec![
                    r.q.to_string(),
                    t.index.to_string(),
                    theorem,
                    c.statement.clone(),
                    c.asserted.to_string(),
                ];
                row.extend(cells);
                rows.push(row);
            }
        }
    }
    let failed = reports
        .iter()
        .find(|r| !r.passed())
        .map(|r| format!("q={}: a monotonicity inequality failed", r.q));
    Ok(
        Output::new(records_json(&reports, single), Some(rows), pretty)
            .fail_if(failed.is_some(), || failed.clone().unwrap_or_default()),
    )
}

#[derive(Serialize)]
struct OracleBettiOut {
    q: usize,
    betti: usize,
}

fn oracle_betti(cli: &Cli, args: &QArgs) -> CliResult<Output> {
    let f = load_map(&args.map.map)?;
    let (qs, single) = dims(&args.q, &f);
    let outs = per_q(&qs, cli.jobs, |q| {
        Ok(OracleBettiOut {
            q,
            betti: oracle_persistent_betti(&f, q),
        })
    })?;
    let mut rows = vec![header(&["q", "betti"])];
    let mut pretty = String::new();
    for o in &outs {
        rows.push(vec![o.q.to_string(), o.betti.to_string()]);
        pretty += &format!("q={}: betti {}\n", o.q, o.betti);
    }
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty))
}

#[derive(Serialize)]
struct SchurComparison {
    q: usize,
    down: bool,
    up: bool,
    essential_dim: usize,
}

fn oracle_schur(cli: &Cli, args: &SchurArgs) -> CliResult<Output> {
    let Some(source) = &args.map else {
        let report: SchurPropertyReport =
            verify_schur_properties_with(cli.seed, args.trials, MAX_SIZE);
        let mut rows = vec![header(&["property", "checked", "failures"])];
        let mut pretty = format!("seed {}\n", cli.seed);
        for c in report.checks() {
            rows.push(vec![
                c.name.to_string(),
                c.checked.to_string(),
                c.failures.to_string(),
            ]);
            pretty += &format!(
                "  {}: {} checked, {} failures\n",
                c.name, c.checked, c.failures
            );
        }
        let passed = report.passed();
        return Ok(Output::new(to_json(&report), Some(rows), pretty)
            .fail_if(!passed, || "a Schur complement identity failed".into()));
    };
    let f = load_map(source)?;
    let (qs, single) = dims(&args.q, &f);
    let outs = per_q(&qs, cli.jobs, |q| {
        let report = laplacian_report(&f, q)?;
        let direct = direct_laplacian(&f, q)?;
        Ok(SchurComparison {
            q,
            down: direct.down == report.down.matrix,
            up: direct.up == report.up.matrix,
            essential_dim: direct.cycle_basis.cols(),
        })
    })?;
    let mut rows = vec![header(&["q", "down", "up", "essential_dim"])];
    let mut pretty = String::new();
    for o in &outs {
        rows.push(vec![
            o.q.to_string(),
            o.down.to_string(),
            o.up.to_string(),
            o.essential_dim.to_string(),
        ]);
        pretty += &format!("q={}: down {} up {}\n", o.q, agree(o.down), agree(o.up));
    }
    let failed = outs.iter().find(|o| !(o.down && o.up)).map(|o| {
        format!(
            "q={}: Schur construction differs from the direct restriction",
            o.q
        )
    });
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty)
        .fail_if(failed.is_some(), || failed.clone().unwrap_or_default()))
}

fn agree(ok: bool) -> &'static str {
    if ok {
        "agrees"
    } else {
        "DIFFERS"
    }
}

fn oracle_cochain(cli: &Cli, args: &QArgs) -> CliResult<Output> {
    let f = load_map(&args.map.map)?;
    let (qs, single) = dims(&args.q, &f);
    let outs = per_q(&qs, cli.jobs, |q| cochain_duality_check(&f, q))?;
    let mut rows = vec![header(&["q", "down", "up", "full"])];
    let mut pretty = String::new();
    for o in &outs {
        rows.push(vec![
            o.q.to_string(),
            o.down.to_string(),
            o.up.to_string(),
            o.full.to_string(),
        ]);
        pretty += &format!(
            "q={}: down {} up {} full {}\n",
            o.q,
            agree(o.down),
            agree(o.up),
            agree(o.full)
        );
    }
    let failed = outs
        .iter()
        .find(|o| !o.passed())
        .map(|o| format!("q={}: chain and cochain Laplacians differ", o.q));
    Ok(Output::new(records_json(&outs, single), Some(rows), pretty)
        .fail_if(failed.is_some(), || failed.clone().unwrap_or_default()))
}

fn fixtures_command(args: &FixturesArgs) -> CliResult<Output> {
    let names: Vec<String> = match &args.write {
        Some(dir) => fixtures::write_fixtures(dir)?,
        None => fixtures::map_names()
            .iter()
            .map(|n| n.to_string())
            .collect(),
    };
    let mut rows = vec![header(&[if args.write.is_some() {
        "path"
    } else {
        "name"
    }])];
    rows.extend(names.iter().map(|n| vec![n.clone()]));
    let pretty = names.iter().map(|n| format!("{n}\n")).collect();
    Ok(Output::new(to_json(&names), Some(rows), pretty))
}

/// Convenience for the binary: runs with the process arguments and streams.
pub fn main_with_env() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
