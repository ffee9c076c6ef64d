//! The eight acceptance criteria, one line of output each.

use std::time::Instant;

use witt_twist::liealg::LieAlgebra;
use witt_twist::ring::{PrimeField, PrimeFieldElem, TPolyRing};
use witt_twist::uea::Uea;
use witt_twist::verify::{run_suite, Check, Config, Suite, DEFAULT_SEED};

fn modular_configs() -> Vec<Config> {
    Config::default_set()
        .into_iter()
        .filter(|c| matches!(c, Config::Modular { .. }))
        .collect()
}

fn general_configs() -> Vec<Config> {
    Config::default_set()
        .into_iter()
        .filter(|c| matches!(c, Config::General { .. }))
        .collect()
}

/// One configuration per `(p, n)` with a single direction.
fn one_per_rank() -> Vec<Config> {
    modular_configs()
        .into_iter()
        .filter(|c| matches!(c, Config::Modular { eta, q: 0, .. } if eta == &[1]))
        .collect()
}

fn collect(suite: Suite, configs: &[Config]) -> Vec<(String, Check)> {
    configs
        .iter()
        .flat_map(|c| {
            let report = run_suite(suite, c, DEFAULT_SEED);
            let label = format!("{} {:?}", report.params.setting, report.params.eta);
            report.checks.into_iter().map(move |ch| (label.clone(), ch))
        })
        .collect()
}

struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

fn judge(results: Vec<(String, Check)>) -> Outcome {
    let failures = results
        .iter()
        .filter(|(_, c)| c.failed())
        .map(|(label, c)| {
            format!(
                "{} [{label}]: {}",
                c.name,
                c.counterexample.as_deref().unwrap_or("")
            )
        })
        .collect();
    Outcome {
        checks: results.len(),
        failures,
    }
}

fn dimension_counts() -> Vec<(String, Check)> {
    let mut out = collect(Suite::Dims, &modular_configs());
    for (p, n, want) in [(3u64, 1usize, 27usize), (5, 1, 3125)] {
        let field = PrimeField::new(p).unwrap();
        let ring = TPolyRing::quotient(field, PrimeFieldElem(1)).unwrap();
        let u = Uea::restricted(LieAlgebra::jacobson_witt(p, n).unwrap(), ring).unwrap();
        let got = u.restricted_basis().unwrap().len();
        let name = format!("dims.anchor[p={p},n={n}]");
        let check = if got == want && got * u.ring().bound() == want * p as usize {
            Check::pass(name)
        } else {
            Check::fail(name, format!("{got} monomials"))
        };
        out.push(("anchor".into(), check));
    }
    out
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Vec<(String, Check)>>)> = vec![
        ("dimension anchors", Box::new(dimension_counts)),
        ("operator oracle", Box::new(|| collect(Suite::Oracle, &one_per_rank()))),
        (
            "factorial and commutation identities",
            Box::new(|| {
                let mut v = collect(Suite::Factorial, &one_per_rank()[..1]);
                v.extend(collect(Suite::Commutation, &general_configs()));
                v
            }),
        ),
        ("twist laws", Box::new(|| collect(Suite::Twist, &Config::default_set()))),
        ("hopf axioms", Box::new(|| collect(Suite::Hopf, &Config::default_set()))),
        (
            "closed form against conjugation",
            Box::new(|| collect(Suite::ClosedForm, &Config::default_set())),
        ),
        ("reduction chain", Box::new(|| collect(Suite::Reduction, &modular_configs()))),
        ("restricted descent", Box::new(|| collect(Suite::Restricted, &modular_configs()))),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = judge(run());
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {name} ({} checks, {} ms)",
            i + 1,
            outcome.checks,
            t.elapsed().as_millis()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed.push(i + 1);
        }
    }
    println!("total {} ms", start.elapsed().as_millis());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
