//! Command-line front end: `classify`, `profile`, `verify` and `sweep`.
//!
//! [`run`] takes the arguments and output streams explicitly so the whole
//! interface can be exercised in-process. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | usage or parse error, invalid input |
//! | 3 | degree cap, extension cap or integer overflow |
//! | 4 | degenerate pair where a generic one is required |
//! | 5 | a checked assertion failed |
//! | 6 | witness search exhausted |

mod output;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify_pair, PairClass};
use crate::closedform::{closed_form_profile, QAssociate, SpecialG};
use crate::config::Config;
use crate::error::Error;
use crate::field::Field;
use crate::poly::{parse_field, Poly};
use crate::profile::{profile_direct, profile_via_roots, IterProfile};
use crate::report::CheckReport;
use crate::verify;

pub use output::ResultRow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_ASSERTION: i32 = 5;
pub const EXIT_WITNESS: i32 = 6;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegreeOverflow { .. } | Error::FieldCapExceeded { .. } | Error::Overflow(_) => EXIT_CAP,
        Error::NotGeneric(_) => EXIT_DEGENERATE,
        Error::HypothesisViolated(_) => EXIT_ASSERTION,
        Error::WitnessSearchExhausted(_) => EXIT_WITNESS,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
    /// Assertion failure, with the message already formatted.
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(e) => exit_code(e),
            CliError::Failed(_) => EXIT_ASSERTION,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "itercomp", version, about = "Factorization profiles of f(g^(n)(x)) over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a pair (f, g) as critical, p-critical or generic.
    Classify(PairArgs),
    /// Print the arithmetic functions of f(g^(n)(x)) for a range of n.
    Profile(ProfileArgs),
    /// Run a checker and print its report as JSON lines.
    Verify(VerifyArgs),
    /// Run a parameter sweep described by a TOML file and print CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field size: a prime `p`, `p^m` or a prime power `q`.
    #[arg(long)]
    field: String,
    /// Irreducible modulus in `t` for an extension field.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    f: String,
    /// A polynomial, or `monomial:D`, `linearized:<u>`, `construction:expgrowth`.
    #[arg(long)]
    g: String,
}

#[derive(Args, Debug, Clone)]
struct LimitArgs {
    /// Seed for randomized factoring; never changes results.
    #[arg(long, default_value_t = Config::default().seed)]
    seed: u64,
    /// Largest polynomial degree that may be materialized.
    #[arg(long, default_value_t = Config::default().degree_cap)]
    cap: usize,
    /// Largest absolute extension degree used by witness searches.
    #[arg(long, default_value_t = Config::default().ambient_cap)]
    ambient_cap: u32,
}

impl LimitArgs {
    fn config(&self) -> Config {
        Config { degree_cap: self.cap, seed: self.seed, ambient_cap: self.ambient_cap }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Direct,
    ViaRoot,
    ClosedForm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, default_value_t = 0)]
    nmin: u32,
    #[arg(long)]
    nmax: u32,
    #[arg(long, value_enum, default_value_t = Mode::Direct)]
    mode: Mode,
    /// Also compute the profile by a second method and fail on any difference.
    #[arg(long)]
    cross_check: bool,
    /// Accept critical, p-critical and linear g.
    #[arg(long)]
    allow_degenerate: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Add wall-clock time per row.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Checker {
    Multiplicity,
    DeltaWitness,
    MaxDegree,
    MinDegree,
    Dichotomy,
    ClosedForm,
    Expgrowth,
    /// The five checkers that take a generic pair.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Monomial,
    Linearized,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    checker: Checker,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    f: String,
    /// Required by every checker except `closed-form` and `expgrowth`.
    #[arg(long)]
    g: Option<String>,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
    /// Closed-form family; defaults to the form of `--g`.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Exponent for `--kind monomial`.
    #[arg(long = "D")]
    big_d: Option<u64>,
    /// Conventional associate for `--kind linearized`.
    #[arg(long)]
    u: Option<String>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// TOML file with `[[family]]` tables.
    plan: PathBuf,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    limits: LimitArgs,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a, out),
        Command::Profile(a) => cmd_profile(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Sweep(a) => sweep::cmd_sweep(&a.plan, a.jobs, &a.limits.config(), out, err),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Failed(m) => m.clone(),
                CliError::Lib(l) => l.to_string(),
                CliError::Io(io) => format!("i/o error: {io}"),
            };
            let _ = writeln!(err, "error: {msg}");
            e.code()
        }
    }
}

fn field_of(args: &FieldArgs) -> CliResult<Field> {
    parse_field(&args.field, args.modulus.as_deref()).map_err(|e| annotate("--field", &args.field, e))
}

/// Adds the offending input and a caret under the parse position.
fn annotate(flag: &str, text: &str, e: Error) -> CliError {
    match e {
        Error::Parse { pos, ref msg } => {
            CliError::Usage(format!("{flag}: {msg}\n  {text}\n  {}^", " ".repeat(pos.min(text.len()))))
        }
        other => CliError::Lib(other),
    }
}

fn parse_poly(field: &Field, flag: &str, text: &str) -> CliResult<Poly> {
    Poly::parse(field, text).map_err(|e| annotate(flag, text, e))
}

/// A parsed `--g`, with its special form when it has one.
struct GArg {
    poly: Poly,
    special: Option<SpecialG>,
}

fn parse_g(field: &Field, text: &str) -> CliResult<GArg> {
    let text = text.trim();
    if let Some(d) = text.strip_prefix("monomial:") {
        let d: u64 = d.trim().parse().map_err(|_| CliError::Usage(format!("--g: invalid exponent in '{text}'")))?;
        let special = SpecialG::Monomial(d);
        return Ok(GArg { poly: special.to_poly(field)?, special: Some(special) });
    }
    if let Some(u) = text.strip_prefix("linearized:") {
        let u = parse_poly(field, "--g", u)?;
        let special = SpecialG::Linearized(u);
        return Ok(GArg { poly: special.to_poly(field)?, special: Some(special) });
    }
    if text == "construction:expgrowth" {
        let q = field.order();
        let xq = Poly::monomial(&field.one(), q as usize);
        let poly = (&xq - &Poly::x(field)).pow(q - 1);
        return Ok(GArg { poly, special: None });
    }
    if let Some((prefix, _)) = text.split_once(':') {
        return Err(CliError::Usage(format!("--g: unknown shortcut '{prefix}:'")));
    }
    let poly = parse_poly(field, "--g", text)?;
    Ok(GArg { special: detect_special(&poly), poly })
}

/// `x^D` or a `q`-linearized polynomial, recognized from its coefficients.
fn detect_special(g: &Poly) -> Option<SpecialG> {
    let d = g.degree()?;
    if d >= 1 && g.is_monic() && g.coeffs()[..d].iter().all(|&c| c == 0) {
        return Some(SpecialG::Monomial(d as u64));
    }
    QAssociate::from_linearized(g).ok().map(|a| SpecialG::Linearized(a.conventional))
}

/// Classification name, with `linear` for `deg g < 2`.
fn class_of(f: &Poly, g: &Poly) -> CliResult<Option<PairClass>> {
    if g.degree().unwrap_or(0) < 2 {
        if f.degree().unwrap_or(0) < 1 {
            return Err(CliError::Lib(Error::DegreeTooSmall("f must have degree at least 1".into())));
        }
        return Ok(None);
    }
    Ok(Some(classify_pair(f, g)?))
}

fn cmd_classify(a: &PairArgs, out: &mut dyn Write) -> CliResult<i32> {
    let field = field_of(&a.field)?;
    let f = parse_poly(&field, "--f", &a.f)?;
    let g = parse_g(&field, &a.g)?.poly;
    match class_of(&f, &g)? {
        Some(class) => writeln!(out, "{class}")?,
        None => writeln!(out, "linear deg={}", g.degree().unwrap_or(0))?,
    }
    Ok(EXIT_OK)
}

fn compute(mode: Mode, f: &Poly, g: &GArg, n: u32, cfg: &Config) -> CliResult<IterProfile> {
    Ok(match mode {
        Mode::Direct => profile_direct(f, &g.poly, n, cfg)?,
        Mode::ViaRoot => profile_via_roots(f, &g.poly, n, cfg)?,
        Mode::ClosedForm => {
            let special = g.special.as_ref().ok_or_else(|| {
                CliError::Usage("closed-form mode needs g = x^D or a q-linearized g (monomial:D, linearized:u)".into())
            })?;
            closed_form_profile(f, special, n)?
        }
    })
}

fn cmd_profile(a: &ProfileArgs, out: &mut dyn Write) -> CliResult<i32> {
    if a.nmin > a.nmax {
        return Err(CliError::Usage(format!("empty n range {}..={}", a.nmin, a.nmax)));
    }
    let field = field_of(&a.pair.field)?;
    let f = parse_poly(&field, "--f", &a.pair.f)?;
    let g = parse_g(&field, &a.pair.g)?;
    let class = class_of(&f, &g.poly)?;
    let generic = class.as_ref().is_some_and(PairClass::is_generic);
    if !generic && !a.allow_degenerate {
        let name = class.as_ref().map_or("linear", PairClass::name);
        return Err(CliError::Lib(Error::NotGeneric(format!("{name} (pass --allow-degenerate to profile it)"))));
    }
    let cfg = a.limits.config();
    let mut rows = Vec::new();
    for n in a.nmin..=a.nmax {
        let start = Instant::now();
        let prof = compute(a.mode, &f, &g, n, &cfg)?;
        let elapsed = start.elapsed();
        if a.cross_check {
            let other_mode = if a.mode == Mode::Direct { Mode::ViaRoot } else { Mode::Direct };
            let other = compute(other_mode, &f, &g, n, &cfg)?;
            if !prof.same_values(&other) {
                return Err(CliError::Failed(format!(
                    "cross-check failed at n={n}: {:?} gives {}, {:?} gives {}",
                    a.mode,
                    prof.census.digest(),
                    other_mode,
                    other.census.digest()
                )));
            }
        }
        rows.push(ResultRow::new(&prof, a.timings.then_some(elapsed)));
    }
    match a.format {
        Format::Table => output::write_table(out, &rows)?,
        Format::Csv => output::write_csv(out, &rows)?,
        Format::Json => output::write_json(out, &rows)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let field = field_of(&a.field)?;
    let f = parse_poly(&field, "--f", &a.f)?;
    let cfg = a.limits.config();
    let g = || -> CliResult<GArg> {
        let text = a.g.as_deref().ok_or_else(|| CliError::Usage("this checker needs --g".into()))?;
        parse_g(&field, text)
    };
    let reports: Vec<CheckReport> = match a.checker {
        Checker::ClosedForm => vec![verify::check_closed_forms(&f, &closed_form_target(a, &field, g)?, a.nmax, &cfg)?],
        Checker::Expgrowth => vec![verify::check_exp_growth(&f, a.nmax, &cfg)?],
        pair => {
            let g = g()?.poly;
            let run_one = |c: Checker| -> crate::error::Result<CheckReport> {
                match c {
                    Checker::Multiplicity => verify::check_multiplicity_bounds(&f, &g, a.nmax, &cfg),
                    Checker::DeltaWitness => verify::delta_constant_witness(&f, &g, a.nmax, &cfg).map(|(_, r)| r),
                    Checker::MaxDegree => verify::check_max_degree_growth(&f, &g, a.nmax, &cfg),
                    Checker::MinDegree => verify::check_min_degree_equivalences(&f, &g, a.nmax, &cfg),
                    Checker::Dichotomy => verify::check_remark_dichotomy(&f, &g, a.nmax, &cfg),
                    _ => unreachable!("handled above"),
                }
            };
            if pair == Checker::All {
                // Reports come out in name order whatever the execution order.
                let mut all = [
                    Checker::Dichotomy,
                    Checker::DeltaWitness,
                    Checker::MaxDegree,
                    Checker::MinDegree,
                    Checker::Multiplicity,
                ]
                .into_iter()
                .map(run_one)
                .collect::<crate::error::Result<Vec<_>>>()?;
                all.sort_by(|x, y| x.name.cmp(&y.name));
                all
            } else {
                vec![run_one(pair)?]
            }
        }
    };
    for r in &reports {
        output::write_report(out, r)?;
    }
    Ok(if reports.iter().all(CheckReport::passed) { EXIT_OK } else { EXIT_ASSERTION })
}

fn closed_form_target(a: &VerifyArgs, field: &Field, g: impl Fn() -> CliResult<GArg>) -> CliResult<SpecialG> {
    match a.kind {
        Some(Kind::Monomial) => {
            a.big_d.map(SpecialG::Monomial).ok_or_else(|| CliError::Usage("--kind monomial needs --D".into()))
        }
        Some(Kind::Linearized) => {
            let u = a.u.as_deref().ok_or_else(|| CliError::Usage("--kind linearized needs --u".into()))?;
            Ok(SpecialG::Linearized(parse_poly(field, "--u", u)?))
        }
        None => g()?.special.ok_or_else(|| {
            CliError::Usage("closed-form needs --kind, or a --g of the form x^D or q-linearized".into())
        }),
    }
}
