use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::char0::sample_generators;
use super::{agree, first_failure, lift, witness, Check, Config, Outcome};
use crate::liealg::BasisDeriv;
use crate::ring::Ring;
use crate::twist::{Quantized, TwistError};
use crate::uea::Element;

const CHAR0_SAMPLES: usize = 3;

/// Symbols `x^alpha D_i` of `W+(n)` with every component at most `max`.
fn small_wplus(n: usize, max: i64) -> Vec<BasisDeriv> {
    let mut alphas: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        alphas = alphas
            .into_iter()
            .flat_map(|a| {
                (0..=max).map(move |x| {
                    let mut b = a.clone();
                    b.push(x);
                    b
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for a in &alphas {
        for i in 1..=n {
            out.push(BasisDeriv::new(a, i).expect("small exponents"));
        }
    }
    out
}

/// Sampled Witt symbols with components bounded by `max_abs` whose twist
/// exponent is an integer.
fn integral_witt_samples<R: Ring>(
    qz: &Quantized<R>,
    seed: u64,
    count: usize,
    max_abs: i64,
) -> Vec<BasisDeriv> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = qz.uea().lie().n();
    let mut out: Vec<BasisDeriv> = Vec::new();
    while out.len() < count {
        for g in sample_generators(&mut rng, n, count) {
            let small = g.alpha().iter().all(|a| a.abs() <= max_abs);
            if small && out.len() < count && !out.contains(&g) && qz.exponents(g).is_ok() {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}

pub(super) fn closed_form_checks(config: &Config, seed: u64) -> Result<Vec<Check>, TwistError> {
    Ok(match config {
        Config::Modular { p, n, eta, q } => {
            let qz = Config::modular_context(*p, *n, *q, eta.clone())?;
            closed_form(&qz, &qz.generators())?
        }
        Config::Integral { n, eta, cap } => {
            let qz = Config::integral_context(*n, *cap, eta.clone())?;
            closed_form(&qz, &small_wplus(*n, if *n == 1 { 3 } else { 2 }))?
        }
        Config::General { rm, cap } => {
            let qz = Config::general_context(rm, *cap)?;
            let gens = integral_witt_samples(&qz, seed, 2 * CHAR0_SAMPLES, 2);
            closed_form(&qz, &gens)?
        }
    })
}

fn closed_form<R: Ring>(qz: &Quantized<R>, gens: &[BasisDeriv]) -> Result<Vec<Check>, TwistError> {
    let twist = qz.twist()?;
    let results: Vec<(Outcome, Outcome)> = {
        use rayon::prelude::*;
        gens.par_iter()
            .map(|&g| {
                let x = qz.uea().gen(g).expect("generator of the algebra");
                let (delta, s) = qz.conjugation_oracle(&twist, &x);
                let d = lift(&x, qz.delta(&x)).and_then(|d| agree(&d, &delta, || witness(&x)));
                let a = lift(&x, qz.antipode(&x)).and_then(|a| agree(&a, &s, || witness(&x)));
                (d, a)
            })
            .collect()
    };
    let first = |pick: fn(&(Outcome, Outcome)) -> &Outcome| {
        results.iter().map(pick).find(|r| r.is_err()).cloned().unwrap_or(Ok(()))
    };
    Ok(vec![
        Check::from_outcome("closed_form.coproduct", first(|r| &r.0)),
        Check::from_outcome("closed_form.antipode", first(|r| &r.1)),
        Check::from_outcome(
            "closed_form.unit",
            agree(&qz.conjugation_oracle(&twist, &qz.uea().one()).1, &qz.uea().one(), || "1".into()),
        ),
    ])
}

pub(super) fn axiom_checks(config: &Config, seed: u64) -> Result<Vec<Check>, TwistError> {
    match config {
        Config::Modular { p, n, eta, q } => {
            let qz = Config::modular_context(*p, *n, *q, eta.clone())?;
            axioms(&qz, &qz.generators())
        }
        Config::Integral { n, eta, cap } => {
            let qz = Config::integral_context(*n, *cap, eta.clone())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut gens: Vec<BasisDeriv> = sample_generators(&mut rng, *n, CHAR0_SAMPLES)
                .into_iter()
                .map(|g| {
                    let a: Vec<i64> = g.alpha().iter().map(|x| x.abs()).collect();
                    BasisDeriv::new(&a, g.index()).expect("small exponents")
                })
                .collect();
            gens.sort();
            gens.dedup();
            axioms(&qz, &gens)
        }
        Config::General { rm, cap } => {
            let qz = Config::general_context(rm, *cap)?;
            let gens = integral_witt_samples(&qz, seed, CHAR0_SAMPLES, 1);
            axioms(&qz, &gens)
        }
    }
}

fn axioms<R: Ring>(qz: &Quantized<R>, gens: &[BasisDeriv]) -> Result<Vec<Check>, TwistError> {
    let alg = qz.uea();
    let elems: Vec<Element<R>> = gens.iter().map(|&g| alg.gen(g)).collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|i| (0..elems.len()).map(move |j| (i, j)))
        .collect();
    let products: Vec<Element<R>> = pairs.iter().map(|&(i, j)| &elems[i] * &elems[j]).collect();

    let coassociative = |x: &Element<R>| -> Outcome {
        let d = lift(x, qz.delta(x))?;
        let left = lift(x, qz.delta_slot(&d, 0))?;
        let right = lift(x, qz.delta_slot(&d, 1))?;
        agree(&left, &right, || witness(x))
    };
    let counit = |x: &Element<R>| -> Outcome {
        let d = lift(x, qz.delta(x))?;
        for slot in [0, 1] {
            let back = d
                .contract_slot(slot, |m| alg.counit0_monomial(m))
                .into_element()
                .map_err(|_| witness(x))?;
            agree(&back, x, || witness(x))?;
        }
        Ok(())
    };
    let antipode = |x: &Element<R>| -> Outcome {
        let d = lift(x, qz.delta(x))?;
        let unit = alg.scalar(qz.counit(x));
        for slot in [0, 1] {
            let m = lift(x, qz.antipode_slot(&d, slot))?.multiply();
            agree(&m, &unit, || witness(x))?;
        }
        Ok(())
    };

    let mut out = Vec::new();
    for (label, set) in [("generators", &elems), ("products", &products)] {
        out.push(Check::from_outcome(
            format!("hopf.coassociative[{label}]"),
            first_failure(set, coassociative),
        ));
        out.push(Check::from_outcome(format!("hopf.counit[{label}]"), first_failure(set, counit)));
        out.push(Check::from_outcome(format!("hopf.antipode[{label}]"), first_failure(set, antipode)));
    }
    out.push(Check::from_outcome(
        "hopf.coproduct_multiplicative",
        first_failure(&pairs, |&(i, j)| {
            let (x, y) = (&elems[i], &elems[j]);
            let xy = &products[pairs.iter().position(|p| *p == (i, j)).expect("listed")];
            let lhs = lift(xy, qz.delta(xy))?;
            let rhs = &lift(x, qz.delta(x))? * &lift(y, qz.delta(y))?;
            agree(&lhs, &rhs, || witness(xy))
        }),
    ));
    out.push(Check::from_outcome(
        "hopf.antipode_antimultiplicative",
        first_failure(&pairs, |&(i, j)| {
            let (x, y) = (&elems[i], &elems[j]);
            let xy = x * y;
            let lhs = lift(&xy, qz.antipode(&xy))?;
            let rhs = &lift(y, qz.antipode(y))? * &lift(x, qz.antipode(x))?;
            agree(&lhs, &rhs, || witness(&xy))
        }),
    ));
    out.push(Check::from_outcome(
        "hopf.counit_on_generators",
        first_failure(&elems, |x| {
            let ring = alg.ring();
            if ring.is_zero(&qz.counit(x)) {
                Ok(())
            } else {
                Err(witness(x))
            }
        }),
    ));
    Ok(out)
}
