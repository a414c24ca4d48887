//! `slicealg`: batch front end to the slice analysis library.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 malformed input,
//! 3 a domain violation or failed certification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use slicealg::campaign::{self, RunConfig, SEED_ENV};
use slicealg::domain::{check_real_path_connected, check_stem_preserving, routing_unit, Sampling, SliceDomain};
use slicealg::function::{eval_along, eval_point, SliceFunction};
use slicealg::path::lift;
use slicealg::star::{relative_deviation, star_poly_oracle};
use slicealg::{ImaginaryUnit, PLPath, SliceFunctionSpec, SlicePoint, StarProduct, StemQuery};

const ORACLE_TOL: f64 = 1e-8;
const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(name = "slicealg", version, about = "Slice functions, stems and star products over the quaternions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point or along a path.
    Eval(EvalArgs),
    /// Stem of a function along a path, or at a point via a route.
    Stem(StemArgs),
    /// Star product values, with the convolution oracle for one-variable polynomials.
    Star(StarArgs),
    /// Sampled real-path-connectedness and stem-preserving certification.
    DomainCheck(DomainCheckArgs),
    /// Run verification suites from a config file.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    domain: PathBuf,
    #[arg(long, required_unless_present = "path")]
    point: Option<PathBuf>,
    #[arg(long)]
    path: Option<PathBuf>,
    /// Slice for `--path`, as "x,y,z". Defaults to the unit of `--point`, then i.
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Args)]
struct StemArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    /// Domain of the function.
    #[arg(long)]
    domain: PathBuf,
    /// Domain the paths live in; defaults to `--domain`.
    #[arg(long)]
    domain1: Option<PathBuf>,
    #[arg(long, required_unless_present = "path")]
    point: Option<PathBuf>,
    /// Path to extract along, or the route to `--point`.
    #[arg(long)]
    path: Option<PathBuf>,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: PathBuf,
    /// Domain of `f` and of the product.
    #[arg(long)]
    domain1: PathBuf,
    /// Domain of `g`.
    #[arg(long)]
    domain2: PathBuf,
    /// JSON array of points.
    #[arg(long)]
    points: PathBuf,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args)]
struct DomainCheckArgs {
    #[arg(long)]
    domain: PathBuf,
    /// Path domain for the stem-preserving check; defaults to `--domain`.
    #[arg(long)]
    domain1: Option<PathBuf>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Overridden by SLICEALG_SEED.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<slicealg::Error> for CliError {
    fn from(e: slicealg::Error) -> Self {
        if e.is_domain_violation() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Schema(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn read_domain(path: &Path) -> CliResult<SliceDomain> {
    let domain: SliceDomain = read_json(path)?;
    domain.validate()?;
    Ok(domain)
}

fn read_spec(function: &Path, domain: &Path) -> CliResult<SliceFunctionSpec> {
    let function: SliceFunction = read_json(function)?;
    Ok(SliceFunctionSpec::new(function, read_domain(domain)?))
}

fn parse_unit(text: &str) -> CliResult<ImaginaryUnit> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Schema(format!("--unit {text:?}: {e}")))?;
    match parts[..] {
        [x, y, z] => Ok(ImaginaryUnit::new(x, y, z)?),
        _ => Err(CliError::Schema(format!("--unit {text:?}: expected three components"))),
    }
}

fn seed_from_env(default: u64) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Schema(format!("{SEED_ENV} is not an unsigned integer: {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    write_stdout(&(text + "\n"))
}

fn write_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn cmd_eval(args: EvalArgs) -> CliResult<u8> {
    let f = read_spec(&args.function, &args.domain)?;
    let point: Option<SlicePoint> = args.point.as_deref().map(read_json).transpose()?;
    let value = match args.path.as_deref() {
        Some(p) => {
            let gamma: PLPath = read_json(p)?;
            let unit = match (&args.unit, &point) {
                (Some(u), _) => parse_unit(u)?,
                (None, Some(q)) => routing_unit(q),
                (None, None) => ImaginaryUnit::I,
            };
            if let Some(q) = &point {
                let gap = lift(&gamma, &unit).endpoint().distance(q);
                if gap > 1e-9 {
                    return Err(slicealg::Error::UnitMismatch { gap }.into());
                }
            }
            eval_along(&f, &gamma, &unit)?
        }
        None => eval_point(&f, point.as_ref().expect("clap requires --point"))?,
    };
    print_json(&json!({ "value": value }))?;
    Ok(0)
}

fn cmd_stem(args: StemArgs) -> CliResult<u8> {
    let f = read_spec(&args.function, &args.domain)?;
    let domain1 = match &args.domain1 {
        Some(p) => read_domain(p)?,
        None => f.domain.clone(),
    };
    let domain2 = f.domain.clone();
    let query = StemQuery::new(f, domain1, domain2);
    let gamma: Option<PLPath> = args.path.as_deref().map(read_json).transpose()?;
    let stem = match args.point.as_deref() {
        Some(p) => query.stem_at_point(&read_json(p)?, gamma.as_ref())?,
        None => query.stem_at(gamma.as_ref().expect("clap requires --path"))?,
    };
    print_json(&json!({ "stem": [stem.f1, stem.f2] }))?;
    Ok(0)
}

fn cmd_star(args: StarArgs) -> CliResult<u8> {
    let f = read_spec(&args.f, &args.domain1)?;
    let g = read_spec(&args.g, &args.domain2)?;
    let points: Vec<SlicePoint> = read_json(&args.points)?;
    let seed = seed_from_env(args.sampling.seed)?;
    let product = StarProduct::new(&f, &g, f.domain.clone(), g.domain.clone());

    let certification = product.certify(args.sampling.trials, &mut campaign::rng_for(seed, 0));
    if !certification.pass {
        eprintln!("domain2 is not stem-preserving for domain1 (refuted by sampling)");
        print_json(&json!({ "certification": certification }))?;
        return Ok(3);
    }

    let oracle = match (f.as_poly(), g.as_poly()) {
        (Some(a), Some(b)) if a.dim() == 1 && b.dim() == 1 => Some(star_poly_oracle(a, b)?),
        _ => None,
    };
    let mut rows = Vec::with_capacity(points.len());
    for q in &points {
        let value = product.star_eval(q, None)?;
        let mut row = json!({ "point": q, "value": value });
        if let Some(h) = &oracle {
            let expected = h.eval(q)?;
            let deviation = relative_deviation(value, expected);
            row["oracle"] = json!(expected);
            row["deviation"] = json!(deviation);
            row["match"] = json!(deviation <= ORACLE_TOL);
        }
        rows.push(row);
    }
    print_json(&json!({ "certification": certification, "points": rows }))?;
    Ok(0)
}

fn cmd_domain_check(args: DomainCheckArgs) -> CliResult<u8> {
    let domain = read_domain(&args.domain)?;
    let domain1 = match &args.domain1 {
        Some(p) => read_domain(p)?,
        None => domain.clone(),
    };
    let seed = seed_from_env(args.sampling.seed)?;
    let sampling = Sampling::default();
    let trials = args.sampling.trials;
    let connected = check_real_path_connected(&domain1, trials, sampling, &mut campaign::rng_for(seed, 0));
    let preserving = check_stem_preserving(&domain1, &domain, trials, sampling, &mut campaign::rng_for(seed, 1));
    let pass = connected.pass() && preserving.pass;
    let report: Value = json!({
        "pass": pass,
        "real_path_connected": { "pass": connected.pass(), "report": connected },
        "stem_preserving": preserving,
    });
    print_json(&report)?;
    Ok(if pass { 0 } else { 3 })
}

fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut file = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    file.write_all(text.as_bytes()).map_err(io)?;
    file.as_file().sync_all().map_err(io)?;
    file.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CliResult<u8> {
    let mut config: RunConfig = match &args.config {
        Some(p) => read_json(p)?,
        None => RunConfig::default(),
    };
    config.apply_env()?;
    config.validate()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(CliError::Schema("--jobs must be positive".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let report = pool.install(|| campaign::run(&config))?;

    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    match &args.out {
        Some(path) => write_atomic(path, &text)?,
        None => write_stdout(&text)?,
    }
    for suite in report.suites.iter().filter(|s| !s.pass) {
        match &suite.error {
            Some(e) => eprintln!("suite {} failed: {e}", suite.suite),
            None => {
                for law in suite.laws.iter().filter(|l| !l.pass) {
                    eprintln!(
                        "suite {} failed: {} max deviation {:e} exceeds {:e}",
                        suite.suite, law.law, law.max_dev, law.tolerance
                    );
                }
            }
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Stem(a) => cmd_stem(a),
        Command::Star(a) => cmd_star(a),
        Command::DomainCheck(a) => cmd_domain_check(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("slicealg: {e}");
            ExitCode::from(e.code())
        }
    }
}
