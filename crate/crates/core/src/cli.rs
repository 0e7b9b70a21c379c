//! `mnesor` command line: `eval`, `check`, `simplify` and `plot`.
//!
//! Exit codes: 0 success, 1 law-check failure, 2 data or expression error,
//! 64 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{check, CheckReport};
use crate::error::Error;
use crate::expr::{parse, simplify, Env};
use crate::fuzzy_set::{Carrier, Grid};
use crate::grade::{ComplementConfig, Grade, DEFAULT_K, DEFAULT_TOL};
use crate::instances::{FuzzySetInstance, GradeInstance};
use crate::setfile::{self, SetDefinitions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Points in the discrete universe used by `check discrete`.
pub const DISCRETE_CHECK_SIZE: usize = 6;
/// Grid size used by `check sampled`.
pub const SAMPLED_CHECK_POINTS: usize = 9;

#[derive(Parser, Debug)]
#[command(name = "mnesor", version, about = "Fuzzy-set semimodule toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate expressions against a set-definition file
    Eval(EvalArgs),
    /// Run the law checker against a built-in instance
    Check(CheckArgs),
    /// Print the simplified form of an expression
    Simplify(SimplifyArgs),
    /// Write long-format CSV (x,name,mu) for plotting
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Complement parameter k
    #[arg(long, default_value_t = DEFAULT_K)]
    k: f64,
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    env: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    #[arg(value_name = "EXPR")]
    positional: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// discrete, sampled or grade
    #[arg(value_name = "INSTANCE")]
    positional: Option<String>,
    #[arg(long)]
    instance: Option<String>,
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SimplifyArgs {
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    #[arg(value_name = "EXPR")]
    positional: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    env: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    #[arg(value_name = "EXPR")]
    positional: Vec<String>,
    /// Plot interval as lo:hi
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Data(String),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::Check(a) => cmd_check(a, stdout, stderr),
        Command::Simplify(a) => cmd_simplify(a, stdout),
        Command::Plot(a) => cmd_plot(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::CheckFailed) => EXIT_CHECK_FAILED,
        Err(Failure::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            EXIT_USAGE
        }
    }
}

fn config(k: f64) -> Result<ComplementConfig, Failure> {
    ComplementConfig::new(k).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(format!("cannot write output: {e}"))),
    }
}

fn read_env(path: &Path, shape_grid: Option<Grid>) -> Result<SetDefinitions, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(setfile::parse(&text, shape_grid)?)
}

fn expressions(flagged: Vec<String>, positional: Vec<String>) -> Result<Vec<String>, Failure> {
    let all: Vec<String> = flagged.into_iter().chain(positional).collect();
    if all.is_empty() {
        return Err(Failure::Usage("no expression given (use -e/--expr)".into()));
    }
    Ok(all)
}

fn cmd_eval(a: EvalArgs, stdout: &mut dyn Write) -> CmdResult {
    let cfg = config(a.common.k)?;
    let exprs = expressions(a.exprs, a.positional)?;
    let env = match &a.env {
        Some(path) => Env::from_definitions(&read_env(path, None)?, cfg)?,
        None => Env::new(cfg),
    };
    let mut results = Vec::with_capacity(exprs.len());
    for text in &exprs {
        let e = parse(text)?;
        results.push((text.as_str(), env.eval(&e)?));
    }
    let doc = setfile::to_json(results.iter().map(|(n, s)| (*n, s)))?;
    let mut text = serde_json::to_string_pretty(&doc).expect("json value serializes");
    text.push('\n');
    emit(a.common.out.as_deref(), stdout, &text)
}

fn run_check(
    name: &str,
    cases: usize,
    seed: u64,
    tol: f64,
    cfg: ComplementConfig,
) -> Result<CheckReport, Failure> {
    let report = match name {
        "discrete" => check(
            &FuzzySetInstance::discrete(DISCRETE_CHECK_SIZE, cfg)?,
            cases,
            seed,
            tol,
        ),
        "sampled" => check(
            &FuzzySetInstance::sampled(SAMPLED_CHECK_POINTS, cfg)?,
            cases,
            seed,
            tol,
        ),
        "grade" => check(&GradeInstance::new(cfg), cases, seed, tol),
        other => {
            return Err(Failure::Usage(format!(
                "unknown instance {other:?} (expected discrete, sampled or grade)"
            )))
        }
    };
    report.map_err(|e| match e {
        Error::Precondition(msg) => Failure::Usage(msg),
        other => other.into(),
    })
}

fn cmd_check(a: CheckArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let name = match (&a.positional, &a.instance) {
        (Some(p), Some(f)) if p != f => {
            return Err(Failure::Usage(format!(
                "conflicting instances {p:?} and {f:?}"
            )))
        }
        (Some(n), _) | (None, Some(n)) => n.clone(),
        (None, None) => return Err(Failure::Usage("no instance given".into())),
    };
    let cfg = config(a.common.k)?;
    let report = run_check(&name, a.cases, a.seed, a.tol, cfg)?;
    let mut text = report.to_json();
    text.push('\n');
    emit(a.common.out.as_deref(), stdout, &text)?;
    for law in report.laws.iter().filter(|l| l.failures > 0) {
        let _ = writeln!(
            stderr,
            "{}: {} of {} trials failed",
            law.id, law.failures, law.run
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn cmd_simplify(a: SimplifyArgs, stdout: &mut dyn Write) -> CmdResult {
    let exprs = expressions(a.exprs, a.positional)?;
    let mut text = String::new();
    for e in &exprs {
        writeln!(text, "{}", simplify(&parse(e)?)).expect("string write");
    }
    emit(a.out.as_deref(), stdout, &text)
}

fn parse_domain(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Usage(format!("domain {s:?} must look like lo:hi with lo < hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

type Curve = Box<dyn Fn(f64) -> Result<Grade, Error>>;

/// `@oneminus` or `@ck:<k>` evaluated directly at `x`.
fn pseudo_curve(name: &str) -> Result<Curve, Failure> {
    if name == "@oneminus" {
        return Ok(Box::new(|x| Grade::new(1.0 - x)));
    }
    if let Some(k) = name.strip_prefix("@ck:") {
        let k: f64 = k
            .parse()
            .map_err(|_| Failure::Usage(format!("bad k in {name:?}")))?;
        let cfg = config(k)?;
        return Ok(Box::new(move |x| Grade::new(x).map(|g| cfg.apply(g))));
    }
    Err(Failure::Usage(format!(
        "unknown pseudo-expression {name:?} (expected @oneminus or @ck:<k>)"
    )))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_plot(a: PlotArgs, stdout: &mut dyn Write) -> CmdResult {
    let cfg = config(a.common.k)?;
    let exprs = expressions(a.exprs, a.positional)?;
    if let Some(n) = a.samples {
        if n < 2 {
            return Err(Failure::Usage(format!(
                "--samples must be at least 2, got {n}"
            )));
        }
    }
    let domain = a.domain.as_deref().map(parse_domain).transpose()?;

    // The plot grid defaults to the environment's own grid, then to 300 points on [0, 1].
    let native = match &a.env {
        Some(path) => read_env(path, None)?
            .sets
            .iter()
            .find_map(|(_, s)| s.carrier().grid().copied()),
        None => None,
    };
    let (lo, hi) = domain.unwrap_or_else(|| native.map_or((0.0, 1.0), |g| (g.lo(), g.hi())));
    let n = a.samples.unwrap_or_else(|| native.map_or(300, |g| g.len()));
    let grid = Grid::new(lo, hi, n).map_err(|e| Failure::Usage(e.to_string()))?;

    let env = match &a.env {
        Some(path) => Env::from_definitions(&read_env(path, Some(grid))?, cfg)?,
        None => Env::with_carrier(Carrier::Sampled(grid), cfg),
    };

    let mut columns: Vec<(String, Vec<Grade>)> = Vec::with_capacity(exprs.len());
    for text in &exprs {
        let grades = if text.starts_with('@') {
            let f = pseudo_curve(text)?;
            grid.points()
                .map(|x| {
                    f(x).map_err(|_| Failure::Data(format!("{text} needs x in [0, 1], got {x}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            let set = env.eval(&parse(text)?)?;
            match set.carrier() {
                Carrier::Sampled(g) if *g == grid => set.grades().to_vec(),
                other => {
                    return Err(Failure::Data(format!(
                        "{text:?} evaluates on {other}, not on the plot grid"
                    )))
                }
            }
        };
        columns.push((csv_field(text), grades));
    }

    let mut csv = String::from("x,name,mu\n");
    for (i, x) in grid.points().enumerate() {
        let x = format_g9(x);
        for (name, grades) in &columns {
            writeln!(csv, "{x},{name},{}", format_g9(grades[i].value())).expect("string write");
        }
    }
    emit(a.common.out.as_deref(), stdout, &csv)
}

/// Formats like C's `%.9g`: 9 significant digits, trailing zeros removed.
pub fn format_g9(v: f64) -> String {
    const PRECISION: i32 = 9;
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    fn trim(s: &str) -> &str {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            s
        }
    }
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim(&format!("{v:.decimals$}")).to_string()
    }
}
