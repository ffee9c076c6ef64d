//! Executable checks of every identity the construction relies on, grouped
//! into suites and reported as structured pass/fail records.
//!
//! A failing check always carries a counterexample in the element grammar of
//! [`crate::cli::grammar`]: the input element whose identity failed, or the
//! nonzero difference of the two sides when the identity has no single input.

mod char0;
mod dims;
mod factorial;
mod hopf;
mod reduction;
mod restricted;
mod twist_laws;

use std::fmt;
use std::sync::Arc;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cli::grammar::format_element;
use crate::liealg::{LieAlgebra, RMatrixData};
use crate::ring::{PrimeField, PrimeFieldElem, Rational, RationalField, Ring, TPolyRing};
use crate::twist::{Quantized, Setting, TwistError};
use crate::uea::{Element, Uea};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Structural,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Structural => "structural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, counterexample: String) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            counterexample: Some(counterexample),
        }
    }

    pub fn with_status(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            counterexample: None,
        }
    }

    /// Pass when `outcome` is `Ok`, otherwise fail with the carried witness.
    pub fn from_outcome(name: impl Into<String>, outcome: Outcome) -> Self {
        match outcome {
            Ok(()) => Check::pass(name),
            Err(w) => Check::fail(name, w),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// `Err` carries a counterexample string.
pub type Outcome = Result<(), String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub p: Option<u64>,
    pub n: usize,
    pub eta: Vec<usize>,
    pub q: Option<u64>,
    pub cap: Option<usize>,
    pub seed: u64,
    pub setting: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check, without timing, so reruns are byte-identical.
    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} [{}]\n", self.suite, self.params.setting);
        for c in &self.checks {
            out.push_str(&format!("{:<10} {}", c.status.to_string(), c.name));
            if let Some(w) = &c.counterexample {
                out.push_str(&format!("  counterexample: {w}"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Factorial,
    Commutation,
    Twist,
    ClosedForm,
    Hopf,
    Reduction,
    Restricted,
    Dims,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Factorial,
        Suite::Commutation,
        Suite::Twist,
        Suite::ClosedForm,
        Suite::Hopf,
        Suite::Reduction,
        Suite::Restricted,
        Suite::Dims,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Factorial => "factorial",
            Suite::Commutation => "commutation",
            Suite::Twist => "twist",
            Suite::ClosedForm => "closed-form",
            Suite::Hopf => "hopf",
            Suite::Reduction => "reduction",
            Suite::Restricted => "restricted",
            Suite::Dims => "dims",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// The configuration a suite runs against.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    /// Restricted enveloping algebra of `W(n;1)` over `GF(p)[t]/(t^p - qt)`.
    Modular {
        p: u64,
        n: usize,
        eta: Vec<usize>,
        q: u64,
    },
    /// `U(W+)` over `Q[t]/(t^cap)` with the product of basic twists.
    Integral {
        n: usize,
        eta: Vec<usize>,
        cap: usize,
    },
    /// `U(W)` over `Q[t]/(t^cap)` with an r-matrix twist.
    General { rm: RMatrixData, cap: usize },
}

pub(crate) type Quot = TPolyRing<PrimeField>;
pub(crate) type QSeries = TPolyRing<RationalField>;

impl Config {
    /// Every configuration of the default acceptance run.
    pub fn default_set() -> Vec<Config> {
        let mut out = Vec::new();
        for (p, n) in [(3, 1), (5, 1), (3, 2)] {
            for eta in all_etas(n) {
                for q in [0, 1] {
                    out.push(Config::Modular {
                        p,
                        n,
                        eta: eta.clone(),
                        q,
                    });
                }
            }
        }
        for n in [1, 2] {
            for eta in all_etas(n) {
                out.push(Config::Integral { n, eta, cap: 4 });
            }
        }
        for rm in default_rmatrices() {
            out.push(Config::General { rm, cap: 4 });
        }
        out
    }

    pub fn params(&self, seed: u64) -> Params {
        match self {
            Config::Modular { p, n, eta, q } => Params {
                p: Some(*p),
                n: *n,
                eta: eta.clone(),
                q: Some(*q),
                cap: Some(*p as usize),
                seed,
                setting: "modular".into(),
            },
            Config::Integral { n, eta, cap } => Params {
                p: None,
                n: *n,
                eta: eta.clone(),
                q: None,
                cap: Some(*cap),
                seed,
                setting: "integral".into(),
            },
            Config::General { rm, cap } => Params {
                p: None,
                n: rm.n(),
                eta: Vec::new(),
                q: None,
                cap: Some(*cap),
                seed,
                setting: format!(
                    "general d0={} d0p={} gamma={}",
                    vector_text(&rm.d0),
                    vector_text(&rm.d0p),
                    rm.gamma.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                ),
            },
        }
    }

    pub(crate) fn modular_algebra(p: u64, n: usize, q: u64) -> Result<Arc<Uea<Quot>>, TwistError> {
        let ring = TPolyRing::quotient(PrimeField::new(p)?, PrimeFieldElem(q % p))?;
        Ok(Uea::restricted(LieAlgebra::jacobson_witt(p, n)?, ring)?)
    }

    pub(crate) fn integral_algebra(n: usize, cap: usize) -> Result<Arc<Uea<QSeries>>, TwistError> {
        let ring = TPolyRing::series(RationalField, cap)?;
        Ok(Uea::free(LieAlgebra::wplus(n)?, ring)?)
    }

    pub(crate) fn modular_context(
        p: u64,
        n: usize,
        q: u64,
        eta: Vec<usize>,
    ) -> Result<Quantized<Quot>, TwistError> {
        Quantized::new(Self::modular_algebra(p, n, q)?, Setting::Modular { eta })
    }

    pub(crate) fn integral_context(
        n: usize,
        cap: usize,
        eta: Vec<usize>,
    ) -> Result<Quantized<QSeries>, TwistError> {
        Quantized::new(Self::integral_algebra(n, cap)?, Setting::Basic { eta })
    }

    pub(crate) fn general_context(
        rm: &RMatrixData,
        cap: usize,
    ) -> Result<Quantized<QSeries>, TwistError> {
        let ring = TPolyRing::series(RationalField, cap)?;
        let u = Uea::free(LieAlgebra::witt(rm.n())?, ring)?;
        Quantized::new(u, Setting::General(rm.clone()))
    }
}

fn vector_text(v: &[Rational]) -> String {
    v.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
}

/// All nonempty ascending direction lists for rank `n`.
pub fn all_etas(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect())
        .collect()
}

/// The r-matrix data exercised by default.
pub fn default_rmatrices() -> Vec<RMatrixData> {
    let v = |xs: &[i64]| xs.iter().map(|&x| Rational::from_integer(x.into())).collect();
    [
        ([1, 0], [1, 0], [1, 0]),
        ([2, 1], [0, 1], [1, 1]),
        ([1, -1], [3, 2], [2, -1]),
    ]
    .into_iter()
    .map(|(d0, d0p, g)| RMatrixData::new(v(&d0), v(&d0p), g.to_vec()).expect("valid r-matrix"))
    .collect()
}

/// Runs one suite (or all of them) against a configuration.
pub fn run_suite(suite: Suite, config: &Config, seed: u64) -> CheckReport {
    let start = Instant::now();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks: Vec<Check> = suites
        .par_iter()
        .flat_map(|&s| run_one(s, config, seed))
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    CheckReport {
        suite: suite.name().into(),
        params: config.params(seed),
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn run_one(suite: Suite, config: &Config, seed: u64) -> Vec<Check> {
    let skipped = |what: &str| vec![Check::with_status(format!("{what}.not_applicable"), Status::Skipped)];
    let setup_failed = |name: &str, e: TwistError| vec![Check::fail(format!("{name}.setup"), e.to_string())];
    match (suite, config) {
        (Suite::Factorial, _) => factorial::checks(),
        (Suite::Commutation, Config::General { rm, cap }) => {
            char0::commutation_checks(rm, *cap, seed).unwrap_or_else(|e| setup_failed("commutation", e))
        }
        (Suite::Commutation, _) => skipped("commutation"),
        (Suite::Twist, _) => twist_laws::checks(config).unwrap_or_else(|e| setup_failed("twist", e)),
        (Suite::ClosedForm, _) => hopf::closed_form_checks(config, seed)
            .unwrap_or_else(|e| setup_failed("closed_form", e)),
        (Suite::Hopf, _) => hopf::axiom_checks(config, seed).unwrap_or_else(|e| setup_failed("hopf", e)),
        (Suite::Reduction, Config::Modular { p, n, eta, .. }) => {
            reduction::checks(*p, *n, eta).unwrap_or_else(|e| setup_failed("reduction", e))
        }
        (Suite::Restricted, Config::Modular { p, n, eta, q }) => {
            restricted::checks(*p, *n, eta, *q).unwrap_or_else(|e| setup_failed("restricted", e))
        }
        (Suite::Dims, Config::Modular { p, n, eta, q }) => {
            dims::checks(*p, *n, eta, *q).unwrap_or_else(|e| setup_failed("dims", e))
        }
        (Suite::Oracle, Config::Modular { p, n, .. }) => dims::oracle_checks(*p, *n),
        (Suite::Reduction, _) => skipped("reduction"),
        (Suite::Restricted, _) => skipped("restricted"),
        (Suite::Dims, _) => skipped("dims"),
        (Suite::Oracle, _) => skipped("oracle"),
        (Suite::All, _) => unreachable!("expanded by run_suite"),
    }
}

/// Runs every suite on every default configuration.
pub fn run_default(seed: u64) -> Vec<CheckReport> {
    Config::default_set()
        .iter()
        .map(|c| run_suite(Suite::All, c, seed))
        .collect()
}

/// `Ok` if the two sides agree, else the witness.
pub(crate) fn agree<T: PartialEq>(lhs: &T, rhs: &T, witness: impl FnOnce() -> String) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(witness())
    }
}

pub(crate) fn witness<R: Ring>(x: &Element<R>) -> String {
    format_element(x)
}

/// Evaluates `f` on every item in parallel and keeps the first failure in
/// input order.
pub(crate) fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Outcome + Sync + Send,
) -> Outcome {
    let results: Vec<Outcome> = items.par_iter().map(f).collect();
    results.into_iter().find(|r| r.is_err()).unwrap_or(Ok(()))
}

/// Turns a computation error into a failure witnessed by `x`.
pub(crate) fn lift<R: Ring, T>(x: &Element<R>, r: Result<T, TwistError>) -> Result<T, String> {
    r.map_err(|_| witness(x))
}
