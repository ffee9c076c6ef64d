use num_bigint::BigInt;

use super::{agree, witness, Check, Config, Outcome};
use crate::ring::{Rational, Ring};
use crate::twist::{Quantized, Setting, TwistElement, TwistError};
use crate::uea::Tensor;

/// A twist context together with the label used in check names.
struct Labeled<R: Ring> {
    label: String,
    qz: Quantized<R>,
}

fn label(eta: &[usize]) -> String {
    eta.iter().map(|k| format!("F({k})")).collect()
}

pub(super) fn checks(config: &Config) -> Result<Vec<Check>, TwistError> {
    match config {
        Config::Modular { p, n, eta, q } => {
            let u = Config::modular_algebra(*p, *n, *q)?;
            let make = |eta: Vec<usize>| Quantized::new(u.clone(), Setting::Modular { eta });
            let shifts: Vec<i64> = (0..*p as i64).collect();
            run(&shifts, contexts(eta, make)?)
        }
        Config::Integral { n, eta, cap } => {
            let u = Config::integral_algebra(*n, *cap)?;
            let make = |eta: Vec<usize>| Quantized::new(u.clone(), Setting::Basic { eta });
            let shifts: Vec<i64> = (-2..=2).collect();
            run(&shifts, contexts(eta, make)?)
        }
        Config::General { rm, cap } => {
            let qz = Config::general_context(rm, *cap)?;
            let shifts: Vec<i64> = (-2..=2).collect();
            run(
                &shifts,
                Contexts {
                    singles: vec![(0, Labeled { label: "F".into(), qz })],
                    product: None,
                },
            )
        }
    }
}

struct Contexts<R: Ring> {
    /// Single-direction twists with their direction.
    singles: Vec<(usize, Labeled<R>)>,
    /// The ordered product, when more than one direction is selected.
    product: Option<Labeled<R>>,
}

fn contexts<R: Ring>(
    eta: &[usize],
    make: impl Fn(Vec<usize>) -> Result<Quantized<R>, TwistError>,
) -> Result<Contexts<R>, TwistError> {
    let mut singles = Vec::new();
    for &k in eta {
        singles.push((
            k,
            Labeled {
                label: label(&[k]),
                qz: make(vec![k])?,
            },
        ));
    }
    let product = if eta.len() >= 2 {
        Some(Labeled {
            label: label(eta),
            qz: make(eta.to_vec())?,
        })
    } else {
        None
    };
    Ok(Contexts { singles, product })
}

fn run<R: Ring>(shifts: &[i64], ctx: Contexts<R>) -> Result<Vec<Check>, TwistError> {
    let mut out = Vec::new();
    let mut built: Vec<(usize, TwistElement<R>)> = Vec::new();
    for (k, l) in &ctx.singles {
        let twist = l.qz.twist()?;
        out.extend(twist_axioms(&l.label, &l.qz, &twist));
        out.extend(shifted_laws(&l.label, &l.qz, shifts)?);
        built.push((*k, twist));
    }
    if let Some(l) = &ctx.product {
        let twist = l.qz.twist()?;
        out.extend(twist_axioms(&l.label, &l.qz, &twist));
        let mut ordered = Tensor::one(l.qz.uea(), 2);
        for (_, t) in &built {
            ordered = &ordered * &t.forward;
        }
        out.push(Check::from_outcome(
            format!("twist.ordered_product[{}]", l.label),
            agree(&twist.forward, &ordered, || witness(&l.qz.directions()[0].h)),
        ));
    }
    if built.len() >= 2 {
        let alg = ctx.singles[0].1.qz.uea();
        for (a, (i, fi)) in built.iter().enumerate() {
            for (b, (j, fj)) in built.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (fi, fj) = (&fi.forward, &fj.forward);
                let one = Tensor::one(alg, 1);
                let di = fi.delta0_slot(0);
                let di_right = fi.delta0_slot(1);
                let left = fj.otimes(&one).expect("same algebra");
                let right = one.otimes(fj).expect("same algebra");
                let h = &ctx.singles[a].1.qz.directions()[0].h;
                let outcome = agree(&(&left * &di), &(&di * &left), || witness(h))
                    .and_then(|_| agree(&(&right * &di_right), &(&di_right * &right), || witness(h)));
                out.push(Check::from_outcome(format!("twist.commute[F({i}),F({j})]"), outcome));
                if a < b {
                    out.push(Check::from_outcome(
                        format!("twist.factors_commute[F({i}),F({j})]"),
                        agree(&(fi * fj), &(fj * fi), || witness(h)),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn twist_axioms<R: Ring>(label: &str, qz: &Quantized<R>, twist: &TwistElement<R>) -> Vec<Check> {
    let alg = qz.uea();
    let f = &twist.forward;
    let h = &qz.directions()[0].h;
    let one1 = Tensor::one(alg, 1);
    let cocycle = {
        let lhs = &f.otimes(&one1).expect("same algebra") * &f.delta0_slot(0);
        let rhs = &one1.otimes(f).expect("same algebra") * &f.delta0_slot(1);
        agree(&lhs, &rhs, || witness(h))
    };
    let counit = agree(&f.counit0_slot(0), &one1, || witness(h))
        .and_then(|_| agree(&f.counit0_slot(1), &one1, || witness(h)));
    let unit = Tensor::one(alg, 2);
    let inverse = agree(&(f * &twist.inverse), &unit, || witness(h))
        .and_then(|_| agree(&(&twist.inverse * f), &unit, || witness(h)));
    let w = twist.forward.antipode0_slot(1).multiply();
    let w_inv = twist.inverse.antipode0_slot(0).multiply();
    let twistor = agree(&(&w * &w_inv), &alg.one(), || witness(&w))
        .and_then(|_| agree(&(&w_inv * &w), &alg.one(), || witness(&w)));
    vec![
        Check::from_outcome(format!("twist.cocycle[{label}]"), cocycle),
        Check::from_outcome(format!("twist.counit[{label}]"), counit),
        Check::from_outcome(format!("twist.inverse[{label}]"), inverse),
        Check::from_outcome(format!("twistor.inverse[{label}]"), twistor),
    ]
}

fn shifted_laws<R: Ring>(label: &str, qz: &Quantized<R>, shifts: &[i64]) -> Result<Vec<Check>, TwistError> {
    let ring = qz.uea().ring();
    let one = qz.uea().one();
    let h = &qz.directions()[0].h;
    let int = |n: i64| Rational::from_integer(BigInt::from(n));
    let mut product: Outcome = Ok(());
    let mut twistors: Outcome = Ok(());
    let mut inverse: Outcome = Ok(());
    for &a in shifts {
        let ta = qz.basic_twist(0, &ring.from_int(a))?;
        let pa = qz.antipode_twistors(0, &ring.from_int(a))?;
        let p_neg = qz.antipode_twistors(0, &ring.from_int(-a))?;
        for &b in shifts {
            let tb = qz.basic_twist(0, &ring.from_int(b))?;
            let pb = qz.antipode_twistors(0, &ring.from_int(b))?;
            if product.is_ok() {
                let rhs = Tensor::pure(&[&one, &qz.one_minus_et_power(0, &int(a - b))?])?;
                product = agree(&(&ta.forward * &tb.inverse), &rhs, || witness(h));
            }
            if twistors.is_ok() {
                let rhs = qz.one_minus_et_power(0, &int(-(a + b)))?;
                twistors = agree(&(&pa.v * &pb.u), &rhs, || witness(&pa.v));
            }
        }
        if inverse.is_ok() {
            let unit = Tensor::one(qz.uea(), 2);
            inverse = agree(&(&ta.inverse * &ta.forward), &unit, || witness(h))
                .and_then(|_| agree(&(&pa.u * &p_neg.v), &one, || witness(&pa.u)))
                .and_then(|_| agree(&(&p_neg.v * &pa.u), &one, || witness(&pa.u)));
        }
    }
    Ok(vec![
        Check::from_outcome(format!("twist.shifted_product[{label}]"), product),
        Check::from_outcome(format!("twistor.shifted_product[{label}]"), twistors),
        Check::from_outcome(format!("twist.shifted_inverse[{label}]"), inverse),
    ])
}
