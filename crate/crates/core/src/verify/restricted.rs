use num_bigint::BigInt;

use super::{agree, first_failure, lift, witness, Check, Config, Outcome, Quot};
use crate::liealg::{BasisDeriv, LieAlgebra};
use crate::ring::{PrimeField, Rational, Ring};
use crate::twist::{Quantized, Setting, TwistError};
use crate::uea::{Element, FactorialKind, Tensor, Uea};

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Descent of the twisted structure to `u_{t,q}(W(n;1))`, plus the Radford
/// subalgebra of each direction.
pub(super) fn checks(p: u64, n: usize, eta: &[usize], q: u64) -> Result<Vec<Check>, TwistError> {
    let qz = Config::modular_context(p, n, q, eta.to_vec())?;
    let mut out = descent(&qz, p);
    out.push(divided_ad_of_pth_power(p, n)?);
    out.extend(direction_checks(&qz, p)?);
    let u = Config::modular_algebra(p, n, q)?;
    for &k in eta {
        let single = Quantized::new(u.clone(), Setting::Modular { eta: vec![k] })?;
        out.extend(radford(&single, p, k)?);
    }
    Ok(out)
}

/// In `u`, `z^p = z^[p]`, so `Delta` and `S` descend exactly when
/// `Delta(z)^p = Delta(z^[p])` and `S(z)^p = S(z^[p])` for every basis symbol.
fn descent(qz: &Quantized<Quot>, p: u64) -> Vec<Check> {
    let alg = qz.uea();
    let lie = alg.lie();
    let gens = qz.generators();
    let p_image = |b: BasisDeriv| -> Element<Quot> {
        match lie.p_power_basis(b) {
            Some(c) => alg.gen(c).expect("basis symbol"),
            None => alg.zero(),
        }
    };
    let coproduct = first_failure(&gens, |&b| {
        let z = alg.gen(b).expect("basis symbol");
        let lhs = lift(&z, qz.delta(&z))?.pow(p);
        let rhs = lift(&z, qz.delta(&p_image(b)))?;
        agree(&lhs, &rhs, || witness(&z))
    });
    let antipode = first_failure(&gens, |&b| {
        let z = alg.gen(b).expect("basis symbol");
        let lhs = lift(&z, qz.antipode(&z))?.pow(p);
        let rhs = lift(&z, qz.antipode(&p_image(b)))?;
        agree(&lhs, &rhs, || witness(&z))
    });
    let counit = first_failure(&gens, |&b| {
        let z = alg.gen(b).expect("basis symbol");
        let ring = alg.ring();
        let lhs = ring.pow(&qz.counit(&z), p);
        let rhs = qz.counit(&p_image(b));
        agree(&lhs, &rhs, || witness(&z))
    });
    let power_is_p_map = first_failure(&gens, |&b| {
        let z = alg.gen(b).expect("basis symbol");
        agree(&z.pow(p), &p_image(b), || witness(&z))
    });
    vec![
        Check::from_outcome("restricted.coproduct_descends", coproduct),
        Check::from_outcome("restricted.antipode_descends", antipode),
        Check::from_outcome("restricted.counit_descends", counit),
        Check::from_outcome("restricted.power_is_p_map", power_is_p_map),
    ]
}

/// In the free `U(W(n;1))` over `GF(p)`, `(ad e)^(l) (z^p)` is `z^p` for
/// `l = 0`, `-delta_ik e` for `l = 1` when `z = x^(e_i) D_i`, and 0 otherwise.
fn divided_ad_of_pth_power(p: u64, n: usize) -> Result<Check, TwistError> {
    let field = PrimeField::new(p)?;
    let lie = LieAlgebra::jacobson_witt(p, n)?;
    let alg = Uea::free(lie, field)?;
    let gens = lie.jw_basis();
    let cases: Vec<(usize, BasisDeriv)> = (1..=n).flat_map(|k| gens.iter().map(move |&b| (k, b))).collect();
    let outcome = first_failure(&cases, |&(k, b)| {
        let (_, (eb, ec)) = lie.basic_pair(k);
        let e = alg.gen(eb).expect("basis symbol").scale_int(ec);
        let z = alg.gen(b).expect("basis symbol");
        let zp = z.pow(p);
        for l in 0..p {
            let lhs = Element::ad_divided_power(&e, l, &zp).map_err(|_| witness(&z))?;
            let rhs = match l {
                0 => zp.clone(),
                1 if b.is_toral() && b.index() == k => -&e,
                _ => alg.zero(),
            };
            agree(&lhs, &rhs, || witness(&z))?;
        }
        Ok(())
    });
    Ok(Check::from_outcome("restricted.divided_ad_of_pth_power", outcome))
}

fn direction_checks(qz: &Quantized<Quot>, p: u64) -> Result<Vec<Check>, TwistError> {
    let ring = qz.uea().ring();
    let one = qz.uea().one();
    let mut geometric: Outcome = Ok(());
    let mut rising: Outcome = Ok(());
    for (d, dir) in qz.directions().iter().enumerate() {
        let f = qz.one_minus_et_power(d, &int(-1))?;
        let g = qz.one_minus_et_power(d, &int(1))?;
        let gp = qz.one_minus_et_power(d, &int(p as i64))?;
        if geometric.is_ok() {
            geometric = agree(&(&f * &g), &one, || witness(&f))
                .and_then(|_| agree(&(&g * &f), &one, || witness(&f)))
                .and_then(|_| agree(&gp, &one, || witness(&gp)))
                .and_then(|_| agree(&g.pow(p), &one, || witness(&g)));
        }
        for a in 0..p as i64 {
            let a = ring.from_int(a);
            for r in [p, p + 1] {
                let h = dir.h.factorial(&a, r, FactorialKind::Rising);
                if rising.is_ok() && !h.is_zero() {
                    rising = Err(witness(&h));
                }
            }
        }
    }
    Ok(vec![
        Check::from_outcome("restricted.geometric_inverse", geometric),
        Check::from_outcome("restricted.rising_factorial_vanishes", rising),
    ])
}

/// `h` and `f = (1 - et)^-1` generate a copy of the Radford Hopf algebra.
fn radford(qz: &Quantized<Quot>, p: u64, k: usize) -> Result<Vec<Check>, TwistError> {
    let alg = qz.uea();
    let dir = &qz.directions()[0];
    let h = &dir.h;
    let f = qz.one_minus_et_power(0, &int(-1))?;
    let f_inv = qz.one_minus_et_power(0, &int(1))?;
    let one = alg.one();
    let w = || witness(h);
    let bracket = &(h * &f) - &(&f * h);
    let delta_h = Tensor::pure(&[h, &f])?.try_add(&Tensor::pure(&[&one, h])?)?;
    let tag = |what: &str| format!("radford.{what}[k={k}]");
    Ok(vec![
        Check::from_outcome(tag("bracket"), agree(&bracket, &(&(&f * &f) - &f), w)),
        Check::from_outcome(tag("h_restricted"), agree(&h.pow(p), h, w)),
        Check::from_outcome(tag("f_order"), agree(&f.pow(p), &one, || witness(&f))),
        Check::from_outcome(tag("coproduct_h"), agree(&qz.delta(h)?, &delta_h, w)),
        Check::from_outcome(
            tag("group_like_f"),
            agree(&qz.delta(&f)?, &Tensor::pure(&[&f, &f])?, || witness(&f)),
        ),
        Check::from_outcome(tag("antipode_h"), agree(&qz.antipode(h)?, &-&(h * &f_inv), w)),
        Check::from_outcome(tag("counit_h"), agree(&qz.counit(h), &alg.ring().zero(), w)),
    ])
}
