//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure (and failed verification),
//! 2 usage errors, 3 ambiguous relation data.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::evaluator::{eval_table, Index, ResidueCache, SignVector, Variant};
use crate::identities::{csv_field, run_suite, Report, Suite, SuiteParams};
use crate::modmath::{sieve_primes, Prime};
use crate::relations::{dimension_estimate, express_stable, odd_basis, Column, DimensionEstimate, Expression, DEFAULT_HEIGHT};
use crate::{Error, Result};

/// Largest prime bound accepted on the command line.
pub const MAX_PRIME: u64 = 50_000_000;
/// Weight guard for exhaustive suites.
pub const MAX_SUITE_WEIGHT: u32 = 12;
/// Weight guard for dimension runs.
pub const MAX_DIMS_WEIGHT: u32 = 7;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "fmzv", version, about = "Finite multiple zeta values of level one and two, mod primes")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Residue cache file (created if missing)
    #[arg(long, env = "FMZV_CACHE", global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one value over a prime range
    Compute(ComputeArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Express a value in a candidate basis
    Discover(DiscoverArgs),
    /// Estimate the dimension spanned by all values of one weight
    Dims(DimsArgs),
    /// Inspect or check the residue cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long, default_value = "zeta2")]
    pub variant: String,
    /// Comma-separated entries, e.g. 1,2
    #[arg(long)]
    pub index: String,
    /// Comma-separated signs for euler, e.g. +,-
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// Inclusive range lo..hi
    #[arg(long, default_value = "5..200")]
    pub primes: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long)]
    pub wmax: Option<u32>,
    #[arg(long)]
    pub rmax: Option<usize>,
    #[arg(long)]
    pub dmax: Option<usize>,
    #[arg(long, default_value = "5..200")]
    pub primes: String,
}

#[derive(Args, Debug)]
pub struct DiscoverArgs {
    /// [variant:]index[:signs]; the variant defaults to zeta2
    #[arg(long)]
    pub target: String,
    /// `odd`, `odd3`, or a ;-separated list of columns
    #[arg(long, default_value = "odd")]
    pub basis: String,
    /// Weight of the keyword bases (defaults to the target weight)
    #[arg(long)]
    pub weight: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    pub height: u64,
    #[arg(long, default_value = "5..400")]
    pub primes: String,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[arg(long)]
    pub weight: u32,
    #[arg(long, default_value = "zeta2")]
    pub variant: String,
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    pub height: u64,
    #[arg(long, default_value = "5..400")]
    pub primes: String,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Print the cache location and size
    Info,
    /// Recompute every cached cell
    Verify,
}

/// Parses an inclusive `lo..hi` range into the primes it contains.
pub fn parse_prime_range(s: &str) -> Result<Vec<Prime>> {
    let bad = || Error::Precondition(format!("prime range must look like lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if hi > MAX_PRIME {
        return Err(Error::Precondition(format!("prime bound {hi} exceeds {MAX_PRIME}")));
    }
    sieve_primes(lo, hi)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Ambiguous(_) => 3,
        Error::NotPrime(_)
        | Error::InvalidPrimeRange { .. }
        | Error::InvalidIndex(_)
        | Error::InvalidSigns(_)
        | Error::VariantSigns { .. }
        | Error::Precondition(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::Precondition("--jobs must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Precondition(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(Outcome { text, success }) => {
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Outcome {
    text: String,
    success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, success: true }
    }
}

fn open_cache(cli: &Cli) -> Result<ResidueCache> {
    match &cli.cache {
        Some(path) => ResidueCache::open(path),
        None => Ok(ResidueCache::in_memory()),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Compute(a) => compute(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Discover(a) => discover(cli, a),
        Command::Dims(a) => dims(cli, a),
        Command::Cache { action } => cache(cli, action),
    }
}

#[derive(Serialize)]
struct ComputeRow {
    prime: u64,
    residue: u64,
}

#[derive(Serialize)]
struct ComputeOutput {
    variant: Variant,
    index: Index,
    #[serde(skip_serializing_if = "Option::is_none")]
    signs: Option<SignVector>,
    rows: Vec<ComputeRow>,
}

fn compute(cli: &Cli, a: &ComputeArgs) -> Result<Outcome> {
    let variant: Variant = a.variant.parse()?;
    let index: Index = a.index.parse()?;
    let signs = a.signs.as_deref().map(str::parse::<SignVector>).transpose()?;
    let primes = parse_prime_range(&a.primes)?;
    let cache = open_cache(cli)?;
    let table = eval_table(variant, &index, signs.as_ref(), &primes, Some(&cache))?;
    let rows: Vec<ComputeRow> = table.rows.iter().map(|(p, &r)| ComputeRow { prime: p.get(), residue: r }).collect();
    let text = match cli.format {
        Format::Json => {
            let o = ComputeOutput { variant, index, signs, rows };
            serde_json::to_string_pretty(&o).expect("serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("prime,residue\n");
            for r in &rows {
                let _ = writeln!(s, "{},{}", r.prime, r.residue);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{variant}({index})");
            if let Some(sg) = &signs {
                let _ = write!(s, " signs {sg}");
            }
            s.push('\n');
            let width = rows.last().map(|r| r.prime.to_string().len()).unwrap_or(1);
            for r in &rows {
                let _ = writeln!(s, "{:>width$}  {}", r.prime, r.residue);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome> {
    let suite: Suite = a.suite.parse()?;
    for (name, w) in [("kmax", a.kmax), ("wmax", a.wmax)] {
        if w.is_some_and(|w| w > MAX_SUITE_WEIGHT) {
            return Err(Error::Precondition(format!("--{name} is limited to {MAX_SUITE_WEIGHT}")));
        }
    }
    if a.rmax.is_some_and(|r| r > MAX_SUITE_WEIGHT as usize) {
        return Err(Error::Precondition(format!("--rmax is limited to {MAX_SUITE_WEIGHT}")));
    }
    let primes = if suite.is_symbolic() { Vec::new() } else { parse_prime_range(&a.primes)? };
    let cache = open_cache(cli)?;
    let params = SuiteParams { kmax: a.kmax, wmax: a.wmax, rmax: a.rmax, dmax: a.dmax };
    let report = run_suite(suite, params, &primes, &cache)?;
    cache.flush()?;
    Ok(Outcome { text: render_report(&report, cli.format), success: report.passed() })
}

/// Resolves `odd`, `odd3` or an explicit `;`-separated list.
pub fn parse_basis(spec: &str, weight: u32) -> Result<Vec<Column>> {
    match spec.trim() {
        "odd" => Ok(odd_basis(weight, 1)),
        "odd3" => Ok(odd_basis(weight, 3)),
        list => list.split(';').filter(|s| !s.trim().is_empty()).map(str::parse).collect(),
    }
}

fn discover(cli: &Cli, a: &DiscoverArgs) -> Result<Outcome> {
    let target: Column = a.target.parse()?;
    let weight = a.weight.unwrap_or(target.weight());
    let basis = parse_basis(&a.basis, weight)?;
    if basis.is_empty() {
        return Err(Error::Precondition("basis is empty".into()));
    }
    let wmax = basis.iter().map(Column::weight).chain([target.weight()]).max().unwrap_or(0) as u64;
    let primes: Vec<Prime> = parse_prime_range(&a.primes)?.into_iter().filter(|p| p.get() > wmax + 2).collect();
    let cache = open_cache(cli)?;
    let e = express_stable(&target, &basis, &primes, a.height, &cache)?;
    let text = match cli.format {
        Format::Json => e.to_json() + "\n",
        Format::Csv => expression_csv(&e),
        Format::Text => expression_text(&e),
    };
    Ok(Outcome::ok(text))
}

fn expression_csv(e: &Expression) -> String {
    let mut s = String::from("column,coefficient,status\n");
    if let Some(cs) = &e.coefficients {
        for (b, c) in e.basis.iter().zip(cs) {
            let _ = writeln!(s, "{},{c},{}", csv_field(&b.to_string()), e.status);
        }
    }
    s
}

fn expression_text(e: &Expression) -> String {
    let mut s = format!("{} = ", e.target);
    match &e.coefficients {
        Some(cs) => {
            let terms: Vec<String> = e
                .basis
                .iter()
                .zip(cs)
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(b, c)| format!("({c})*{b}"))
                .collect();
            s.push_str(if terms.is_empty() { "0".into() } else { terms.join(" + ") }.as_str());
        }
        None => s.push('?'),
    }
    let _ = writeln!(s, "\nstatus: {}", e.status);
    s
}

fn dims(cli: &Cli, a: &DimsArgs) -> Result<Outcome> {
    if a.weight > MAX_DIMS_WEIGHT {
        return Err(Error::Precondition(format!("--weight is limited to {MAX_DIMS_WEIGHT}")));
    }
    let variant: Variant = a.variant.parse()?;
    let primes = parse_prime_range(&a.primes)?;
    let cache = open_cache(cli)?;
    let d = dimension_estimate(a.weight, variant, &primes, a.height, &cache)?;
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&d).expect("serializes") + "\n",
        Format::Csv => format!(
            "weight,variant,columns,relations,dimension,conjectured\n{},{},{},{},{},{}\n",
            d.weight, d.variant, d.columns, d.relations, d.dimension, d.conjectured
        ),
        Format::Text => dims_text(&d),
    };
    Ok(Outcome::ok(text))
}

fn dims_text(d: &DimensionEstimate) -> String {
    let conj = if d.variant == Variant::Zeta { "d(k-3)" } else { "F(k)" };
    format!(
        "weight {} {}: {} columns, {} relations, estimated dimension {}, conjectured {} = {}\n",
        d.weight, d.variant, d.columns, d.relations, d.dimension, conj, d.conjectured
    )
}

fn cache(cli: &Cli, action: &CacheAction) -> Result<Outcome> {
    let path = cli
        .cache
        .as_ref()
        .ok_or_else(|| Error::Precondition("no cache configured; pass --cache or set FMZV_CACHE".into()))?;
    let cache = ResidueCache::open(path)?;
    let text = match action {
        CacheAction::Info => match cli.format {
            Format::Json => format!("{{\"path\": {:?}, \"entries\": {}}}\n", path.display().to_string(), cache.len()),
            Format::Csv => format!("path,entries\n{},{}\n", path.display(), cache.len()),
            Format::Text => format!("{}: {} entries\n", path.display(), cache.len()),
        },
        CacheAction::Verify => {
            let n = cache.verify()?;
            format!("{n} entries verified\n")
        }
    };
    Ok(Outcome::ok(text))
}
