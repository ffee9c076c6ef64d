//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on a usage
//! error.

pub mod grammar;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};

use crate::liealg::{LieAlgebra, RMatrixData};
use crate::ring::{is_prime, PrimeField, PrimeFieldElem, Rational, RationalField, Ring, TPolyRing};
use crate::twist::{Quantized, Setting};
use crate::uea::{Element, Uea};
use crate::verify::{run_default, run_suite, CheckReport, Config, Status, Suite, DEFAULT_SEED};
use grammar::{format_element, format_tensor};

/// Default `t`-truncation for characteristic-zero work.
pub const DEFAULT_TRUNC: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "witt-twist", version, about = "Twisted Hopf structures on Witt-type enveloping algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coproduct of a basis element, in W(n;1) when --p is given and in W+ otherwise.
    Delta(BasisArgs),
    /// Antipode of a basis element, in the same settings as `delta`.
    Antipode(BasisArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Dimensions of the restricted and quantized algebras.
    Dims(DimsArgs),
    /// Coproduct of x^alpha d_i in U(W) under an r-matrix twist.
    Char0Delta(Char0Args),
    /// Antipode of x^alpha d_i in U(W) under an r-matrix twist.
    Char0Antipode(Char0Args),
}

#[derive(Debug, Clone, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated twist directions, e.g. `1,2`.
    #[arg(long, default_value = "1")]
    pub eta: String,
    /// Parameter of t^p - qt (modular only).
    #[arg(long)]
    pub q: Option<u64>,
    /// Comma-separated exponent vector.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub i: usize,
    /// t-truncation (characteristic zero only).
    #[arg(long)]
    pub trunc: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Char0Args {
    #[arg(long, allow_hyphen_values = true)]
    pub d0: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d0p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub i: usize,
    #[arg(long, default_value_t = DEFAULT_TRUNC)]
    pub trunc: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub d0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d0p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Text printed to stdout and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

/// Parses `args` (program name first), runs the command, prints its output
/// and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Delta(a) => basis_image(a, Image::Coproduct),
        Command::Antipode(a) => basis_image(a, Image::Antipode),
        Command::Char0Delta(a) => char0_image(a, Image::Coproduct),
        Command::Char0Antipode(a) => char0_image(a, Image::Antipode),
        Command::Verify(a) => verify(a),
        Command::Dims(a) => dims(a),
    }
}

#[derive(Clone, Copy)]
enum Image {
    Coproduct,
    Antipode,
}

fn parse_list<T: FromStr>(flag: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| usage(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_rationals(flag: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let num: BigInt = num.parse().map_err(|_| usage(format!("--{flag}: cannot parse {s:?}")))?;
            let den: BigInt = den.parse().map_err(|_| usage(format!("--{flag}: cannot parse {s:?}")))?;
            if den == BigInt::from(0) {
                return Err(usage(format!("--{flag}: zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        })
        .collect()
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if p < 3 || !is_prime(p) {
        return Err(usage(format!("--p must be a prime at least 3, got {p}")));
    }
    Ok(())
}

fn check_rank(n: usize) -> Result<(), CliError> {
    if n == 0 || n > crate::liealg::MAX_VARS {
        return Err(usage(format!("--n must lie in 1..={}", crate::liealg::MAX_VARS)));
    }
    Ok(())
}

fn parse_eta(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let eta: Vec<usize> = parse_list("eta", text)?;
    if eta.is_empty() || eta.iter().any(|&k| k == 0 || k > n) {
        return Err(usage(format!("--eta entries must lie in 1..={n}")));
    }
    if eta.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--eta must be strictly increasing"));
    }
    Ok(eta)
}

fn check_index(i: usize, n: usize) -> Result<(), CliError> {
    if i == 0 || i > n {
        return Err(usage(format!("--i must lie in 1..={n}")));
    }
    Ok(())
}

fn check_q(q: u64, p: u64) -> Result<(), CliError> {
    if q >= p {
        return Err(usage(format!("--q must be a residue below {p}")));
    }
    Ok(())
}

fn render<R: Ring>(qz: &Quantized<R>, x: &Element<R>, image: Image) -> Result<Output, CliError> {
    let text = match image {
        Image::Coproduct => format_tensor(&qz.delta(x).map_err(|e| usage(e.to_string()))?),
        Image::Antipode => format_element(&qz.antipode(x).map_err(|e| usage(e.to_string()))?),
    };
    Ok(Output::ok(text + "\n"))
}

fn basis_image(a: &BasisArgs, image: Image) -> Result<Output, CliError> {
    check_rank(a.n)?;
    let eta = parse_eta(&a.eta, a.n)?;
    let alpha: Vec<i64> = parse_list("alpha", &a.alpha)?;
    if alpha.len() != a.n {
        return Err(usage(format!("--alpha needs {} entries", a.n)));
    }
    check_index(a.i, a.n)?;
    let err = |e: &dyn std::fmt::Display| usage(e.to_string());
    match a.p {
        Some(p) => {
            check_prime(p)?;
            if a.trunc.is_some() {
                return Err(usage("--trunc applies only without --p"));
            }
            let q = a.q.unwrap_or(0);
            check_q(q, p)?;
            if alpha.iter().any(|&x| x < 0 || x >= p as i64) {
                return Err(usage(format!("--alpha entries must lie in 0..{p}")));
            }
            let ring = TPolyRing::quotient(PrimeField::new(p).map_err(|e| err(&e))?, PrimeFieldElem(q))
                .map_err(|e| err(&e))?;
            let lie = LieAlgebra::jacobson_witt(p, a.n).map_err(|e| err(&e))?;
            let u = Uea::restricted(lie, ring).map_err(|e| err(&e))?;
            let qz = Quantized::new(u.clone(), Setting::Modular { eta }).map_err(|e| err(&e))?;
            let x = u.basis(&alpha, a.i).map_err(|e| err(&e))?;
            render(&qz, &x, image)
        }
        None => {
            if a.q.is_some() {
                return Err(usage("--q applies only with --p"));
            }
            if alpha.iter().any(|&x| x < 0) {
                return Err(usage("--alpha entries must be nonnegative for W+"));
            }
            let ring = TPolyRing::series(RationalField, a.trunc.unwrap_or(DEFAULT_TRUNC)).map_err(|e| err(&e))?;
            let u = Uea::free(LieAlgebra::wplus(a.n).map_err(|e| err(&e))?, ring).map_err(|e| err(&e))?;
            let qz = Quantized::new(u.clone(), Setting::Basic { eta }).map_err(|e| err(&e))?;
            let x = u.basis(&alpha, a.i).map_err(|e| err(&e))?;
            render(&qz, &x, image)
        }
    }
}

fn rmatrix(d0: &str, d0p: &str, gamma: &str) -> Result<RMatrixData, CliError> {
    let d0 = parse_rationals("d0", d0)?;
    let d0p = parse_rationals("d0p", d0p)?;
    let gamma: Vec<i64> = parse_list("gamma", gamma)?;
    if d0.len() != d0p.len() || d0.len() != gamma.len() {
        return Err(usage("--d0, --d0p and --gamma need the same length"));
    }
    check_rank(d0.len())?;
    RMatrixData::new(d0, d0p, gamma).map_err(|e| usage(e.to_string()))
}

fn char0_image(a: &Char0Args, image: Image) -> Result<Output, CliError> {
    let rm = rmatrix(&a.d0, &a.d0p, &a.gamma)?;
    let alpha: Vec<i64> = parse_list("alpha", &a.alpha)?;
    if alpha.len() != rm.n() {
        return Err(usage(format!("--alpha needs {} entries", rm.n())));
    }
    check_index(a.i, rm.n())?;
    let err = |e: &dyn std::fmt::Display| usage(e.to_string());
    let ring = TPolyRing::series(RationalField, a.trunc).map_err(|e| err(&e))?;
    let u = Uea::free(LieAlgebra::witt(rm.n()).map_err(|e| err(&e))?, ring).map_err(|e| err(&e))?;
    let qz = Quantized::new(u.clone(), Setting::General(rm))
        .map_err(|e| err(&e))?
        .with_rational_exponents(true);
    let x = u.basis(&alpha, a.i).map_err(|e| err(&e))?;
    render(&qz, &x, image)
}

fn verify_config(a: &VerifyArgs) -> Result<Option<Config>, CliError> {
    let general = a.d0.is_some() || a.d0p.is_some() || a.gamma.is_some();
    if general {
        let (Some(d0), Some(d0p), Some(gamma)) = (&a.d0, &a.d0p, &a.gamma) else {
            return Err(usage("--d0, --d0p and --gamma go together"));
        };
        if a.p.is_some() || a.n.is_some() || a.eta.is_some() || a.q.is_some() {
            return Err(usage("r-matrix data excludes --p, --n, --eta and --q"));
        }
        let rm = rmatrix(d0, d0p, gamma)?;
        return Ok(Some(Config::General {
            rm,
            cap: a.trunc.unwrap_or(DEFAULT_TRUNC),
        }));
    }
    let Some(n) = a.n else {
        if a.p.is_some() || a.eta.is_some() || a.q.is_some() || a.trunc.is_some() {
            return Err(usage("--n is required with --p, --eta, --q or --trunc"));
        }
        return Ok(None);
    };
    check_rank(n)?;
    let eta = parse_eta(a.eta.as_deref().unwrap_or("1"), n)?;
    match a.p {
        Some(p) => {
            check_prime(p)?;
            if a.trunc.is_some() {
                return Err(usage("--trunc applies only without --p"));
            }
            let q = a.q.unwrap_or(0);
            check_q(q, p)?;
            Ok(Some(Config::Modular { p, n, eta, q }))
        }
        None => {
            if a.q.is_some() {
                return Err(usage("--q applies only with --p"));
            }
            Ok(Some(Config::Integral {
                n,
                eta,
                cap: a.trunc.unwrap_or(DEFAULT_TRUNC),
            }))
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    let suite: Suite = a.suite.parse().map_err(CliError::Usage)?;
    let config = verify_config(a)?;
    let reports: Vec<CheckReport> = match &config {
        Some(c) => vec![run_suite(suite, c, a.seed)],
        None if suite == Suite::All => run_default(a.seed),
        None => Config::default_set().iter().map(|c| run_suite(suite, c, a.seed)).collect(),
    };
    if let Some(path) = &a.json {
        let body = match (&config, reports.as_slice()) {
            (Some(_), [one]) => one.to_json(),
            _ => serde_json::to_string_pretty(&reports).expect("reports serialize"),
        };
        std::fs::write(path, body + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let text: String = reports.iter().map(CheckReport::render_text).collect();
    Ok(Output {
        text,
        passed: reports.iter().all(CheckReport::passed),
    })
}

fn dims(a: &DimsArgs) -> Result<Output, CliError> {
    check_prime(a.p)?;
    check_rank(a.n)?;
    let exponent = (a.p as u32).pow(a.n as u32) * a.n as u32;
    let base = BigUint::from(a.p).pow(exponent);
    let config = Config::Modular {
        p: a.p,
        n: a.n,
        eta: vec![1],
        q: 0,
    };
    let report = run_suite(Suite::Dims, &config, DEFAULT_SEED);
    let status = report
        .checks
        .iter()
        .find(|c| c.name == "dims.restricted_basis")
        .map(|c| c.status)
        .unwrap_or(Status::Fail);
    let how = match status {
        Status::Pass => "enumerated",
        Status::Structural => "structural",
        _ => "failed",
    };
    let text = format!(
        "restricted basis: {base} ({how})\nquantized: {} ({how})\n",
        &base * BigUint::from(a.p)
    );
    Ok(Output {
        text,
        passed: report.passed(),
    })
}
