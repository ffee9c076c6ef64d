use num_bigint::BigInt;

use super::{agree, witness, Check, Outcome};
use crate::liealg::LieAlgebra;
use crate::ring::{binom_rational, factorial, Rational, RationalField};
use crate::uea::{Element, FactorialKind, Uea};

const MAX_ORDER: u64 = 8;

fn shifts() -> Vec<Rational> {
    [(-2, 1), (-1, 2), (0, 1), (1, 1), (5, 3)]
        .into_iter()
        .map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shifted factorial identities in a polynomial ring `Q[x]`, realized as the
/// commutative subalgebra generated by one Euler derivation.
pub(super) fn checks() -> Vec<Check> {
    let alg = Uea::free(LieAlgebra::wplus(1).expect("rank 1"), RationalField).expect("free algebra");
    let x = alg.basis(&[1], 1).expect("Euler derivation");
    let rise = |a: &Rational, r: u64| x.factorial(a, r, FactorialKind::Rising);
    let fall = |a: &Rational, r: u64| x.factorial(a, r, FactorialKind::Falling);
    let diff = |l: &Element<RationalField>, r: &Element<RationalField>| witness(&(l - r));
    let shifts = shifts();

    let mut rising_split: Outcome = Ok(());
    let mut falling_split: Outcome = Ok(());
    let mut falling_as_rising: Outcome = Ok(());
    for a in &shifts {
        for s in 0..=MAX_ORDER {
            for t in 0..=MAX_ORDER {
                let sq = int(s as i64);
                if rising_split.is_ok() {
                    let lhs = rise(a, s + t);
                    let rhs = &rise(a, s) * &rise(&(a + &sq), t);
                    rising_split = agree(&lhs, &rhs, || diff(&lhs, &rhs));
                }
                if falling_split.is_ok() {
                    let lhs = fall(a, s + t);
                    let rhs = &fall(a, s) * &fall(&(a - &sq), t);
                    falling_split = agree(&lhs, &rhs, || diff(&lhs, &rhs));
                }
            }
            if falling_as_rising.is_ok() {
                let lhs = fall(a, s);
                let rhs = rise(&(a - int(s as i64) + int(1)), s);
                falling_as_rising = agree(&lhs, &rhs, || diff(&lhs, &rhs));
            }
        }
    }

    let mut mixed_sum: Outcome = Ok(());
    let mut falling_sum: Outcome = Ok(());
    for a in &shifts {
        for b in &shifts {
            for r in 0..=MAX_ORDER {
                let mut lhs_mixed = alg.zero();
                let mut lhs_falling = alg.zero();
                for s in 0..=r {
                    let t = r - s;
                    let c = Rational::new(
                        BigInt::from(if t % 2 == 1 { -1 } else { 1 }),
                        factorial(s) * factorial(t),
                    );
                    let fs = fall(a, s);
                    lhs_mixed = &lhs_mixed + &(&fs * &rise(b, t)).scale(&c);
                    lhs_falling = &lhs_falling + &(&fs * &fall(&(b - int(s as i64)), t)).scale(&c);
                }
                let ab = a - b;
                if mixed_sum.is_ok() {
                    let rhs = alg.scalar(binom_rational(&ab, r as u32));
                    mixed_sum = agree(&lhs_mixed, &rhs, || diff(&lhs_mixed, &rhs));
                }
                if falling_sum.is_ok() {
                    let top = &ab + int(r as i64) - int(1);
                    let rhs = alg.scalar(binom_rational(&top, r as u32));
                    falling_sum = agree(&lhs_falling, &rhs, || diff(&lhs_falling, &rhs));
                }
            }
        }
    }

    // a = 2, b = 0, r = 2: three terms collapsing to binom(2, 2) = 1.
    let collapse: Outcome = {
        let half = Rational::new(1.into(), 2.into());
        let lhs = &(&fall(&int(2), 2).scale(&half) - &(&fall(&int(2), 1) * &rise(&int(0), 1)))
            + &rise(&int(0), 2).scale(&half);
        let rhs = alg.one();
        agree(&lhs, &rhs, || diff(&lhs, &rhs))
    };

    vec![
        Check::from_outcome("factorial.rising_split", rising_split),
        Check::from_outcome("factorial.falling_split", falling_split),
        Check::from_outcome("factorial.falling_as_rising", falling_as_rising),
        Check::from_outcome("factorial.mixed_sum_binomial", mixed_sum),
        Check::from_outcome("factorial.falling_sum_binomial", falling_sum),
        Check::from_outcome("factorial.mixed_sum_example", collapse),
    ]
}
