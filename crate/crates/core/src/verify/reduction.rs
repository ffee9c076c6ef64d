use num_bigint::BigInt;
use num_traits::One;

use super::{agree, first_failure, witness, Check, Outcome, QSeries};
use crate::liealg::{BasisDeriv, LieAlgebra};
use crate::ring::{factorial, PrimeField, Rational, RationalField, Ring, RingError, TPoly, TPolyRing};
use crate::twist::{modular_cbar, scaled_rising_value, Quantized, Setting, TwistCoefficients, TwistError};
use crate::uea::{map_element, map_tensor, GenImage, Uea};

type FSeries = TPolyRing<PrimeField>;

/// Checks of the passage from the integral form of `U(W+)` to `U(W(n;1))`.
pub(super) fn checks(p: u64, n: usize, eta: &[usize]) -> Result<Vec<Check>, TwistError> {
    let mut out = coefficient_checks(p);
    out.extend(image_checks(p, n, eta)?);
    Ok(out)
}

/// `x^alpha D_i t^l` rendered in `U(W)` over `Q[t]/(t^(l+1))`, naming one
/// coefficient sample.
fn symbol_witness(alpha: &[i64], i: usize, l: u64) -> String {
    let ring = TPolyRing::series(RationalField, l as usize + 1).expect("positive cap");
    let alg = Uea::free(LieAlgebra::witt(alpha.len()).expect("small rank"), ring).expect("free algebra");
    let x = alg.basis(alpha, i).expect("small exponents");
    witness(&(&x * &alg.t_pow(l as usize).expect("below cap")))
}

fn coefficient_checks(p: u64) -> Vec<Check> {
    let len = 2 * p as usize;
    let mut integral: Outcome = Ok(());
    let mut coefficients: Outcome = Ok(());
    let mut vanish: Outcome = Ok(());
    for alpha_k in 0..2 * p as i64 {
        for delta in [false, true] {
            if delta && alpha_k == 0 {
                continue;
            }
            let t = TwistCoefficients::basic(alpha_k, delta, len, Some(p));
            // Direction 1 of rank 2: the symbol x^(alpha_k, 0) D_i with i = 1
            // exactly when the derivation index meets the direction.
            let label = |l: u64| symbol_witness(&[alpha_k, 0], if delta { 1 } else { 2 }, l);
            if let Some(l) = t.c.iter().position(|c| !c.is_integer()) {
                if integral.is_ok() {
                    integral = Err(label(l as u64));
                }
            }
            if alpha_k < p as i64 {
                for l in 0..len as u64 {
                    if coefficients.is_ok() && t.cbar[l as usize] != modular_cbar(alpha_k, delta, l, p) {
                        coefficients = Err(label(l));
                    }
                    if vanish.is_ok() && l >= p && t.cbar[l as usize] != 0 {
                        vanish = Err(label(l));
                    }
                }
            }
        }
    }
    let mut scaled: Outcome = Ok(());
    'outer: for a in -10..=10 {
        for k in -10..=10 {
            for l in 0..=10 {
                if !scaled_rising_value(a, k, l).is_integer() {
                    scaled = Err(symbol_witness(&[a, k], 1, l));
                    break 'outer;
                }
            }
        }
    }
    vec![
        Check::from_outcome("reduction.integral_coefficients", integral),
        Check::from_outcome("reduction.coefficients", coefficients),
        Check::from_outcome("reduction.kill_beyond_bound", vanish),
        Check::from_outcome("reduction.scaled_rising_integrality", scaled),
    ]
}

/// The closed forms computed in `U(W+)` over `Q[t]/(t^(p+1))`, pushed through
/// `x^beta D_j -> beta! x^(beta) D_j` and reduced mod `p`, against the modular
/// closed forms in the free `U(W(n;1))` over `GF(p)[t]/(t^(p+1))`.
fn image_checks(p: u64, n: usize, eta: &[usize]) -> Result<Vec<Check>, TwistError> {
    let cap = p as usize + 1;
    let source_ring: QSeries = TPolyRing::series(RationalField, cap)?;
    let field = PrimeField::new(p)?;
    let target_ring: FSeries = TPolyRing::series(field, cap)?;
    let source = Uea::free(LieAlgebra::wplus(n)?, source_ring.clone())?;
    let target = Uea::free(LieAlgebra::jacobson_witt(p, n)?, target_ring.clone())?;
    let integral = Quantized::new(source.clone(), Setting::Basic { eta: eta.to_vec() })?;
    let modular = Quantized::new(target.clone(), Setting::Modular { eta: eta.to_vec() })?;

    let coeff = |c: &TPoly<Rational>| -> Result<TPoly<_>, RingError> {
        let reduced = c.coeffs().iter().map(|x| field.from_rational(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(target_ring.from_coeffs(reduced))
    };
    let gen = |b: BasisDeriv| {
        let alpha = b.alpha();
        if alpha.iter().any(|&a| a >= p as i64) {
            return GenImage::Zero;
        }
        let weight = alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
        let image = BasisDeriv::new(&alpha, b.index()).expect("in range");
        GenImage::Scaled(image, target_ring.constant(field.from_bigint(&weight)))
    };

    let distinguished = first_failure(&(0..eta.len()).collect::<Vec<_>>(), |&d| {
        let rhs = &modular.directions()[d].e;
        let lhs = map_element(&integral.directions()[d].e, &target, coeff, gen).map_err(|_| witness(rhs))?;
        agree(&lhs, rhs, || witness(rhs))
    });

    let gens = modular.generators();
    let lifted = |b: BasisDeriv| {
        let alpha = b.alpha();
        let weight = alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
        let x = source.gen(b).expect("W(n;1) symbols lie in W+");
        x.scale(&source_ring.constant(Rational::new(BigInt::one(), weight)))
    };
    let coproduct = first_failure(&gens, |&b| {
        let target_x = target.gen(b).expect("basis symbol");
        let x = lifted(b);
        let delta = integral.delta(&x).map_err(|_| witness(&target_x))?;
        let lhs = map_tensor(&delta, &target, coeff, gen).map_err(|_| witness(&target_x))?;
        let rhs = modular.delta(&target_x).map_err(|_| witness(&target_x))?;
        agree(&lhs, &rhs, || witness(&target_x))
    });
    let antipode = first_failure(&gens, |&b| {
        let target_x = target.gen(b).expect("basis symbol");
        let x = lifted(b);
        let s = integral.antipode(&x).map_err(|_| witness(&target_x))?;
        let lhs = map_element(&s, &target, coeff, gen).map_err(|_| witness(&target_x))?;
        let rhs = modular.antipode(&target_x).map_err(|_| witness(&target_x))?;
        agree(&lhs, &rhs, || witness(&target_x))
    });
    Ok(vec![
        Check::from_outcome("reduction.distinguished_element", distinguished),
        Check::from_outcome("reduction.coproduct_images", coproduct),
        Check::from_outcome("reduction.antipode_images", antipode),
    ])
}
