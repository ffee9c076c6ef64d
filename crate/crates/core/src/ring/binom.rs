use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PrimeFieldElem, Rational};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `a(a-1)...(a-r+1)`.
pub fn falling_product(a: &BigInt, r: u32) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, j| acc * (a - j))
}

/// Generalized binomial coefficient `a(a-1)...(a-r+1)/r!` for any integer `a`.
pub fn binom_int(a: i64, r: u32) -> BigInt {
    let num = falling_product(&BigInt::from(a), r);
    let den = factorial(r as u64);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Binomial coefficient with a rational top argument.
pub fn binom_rational(a: &Rational, r: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..r {
        acc *= a - Rational::from_integer(BigInt::from(j));
    }
    acc / Rational::from_integer(factorial(r as u64))
}

/// `binom(n, k) mod p` by base-`p` digits.
pub fn lucas_binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so the exact value never has p as a factor.
    let mut num = 1u128;
    let mut den = 1u128;
    for j in 0..k {
        num = num * (n - j) as u128 % p as u128;
        den = den * (j + 1) as u128 % p as u128;
    }
    let inv = super::prime::inverse_mod(den as u64, p).expect("k! is a unit for k < p");
    (num as u64) * inv % p
}

/// `prod_i binom(alpha_i + beta_i, alpha_i) mod p` for nonnegative multi-indices.
pub fn multi_binom_mod_p(alpha: &[i64], beta: &[i64], p: u64) -> PrimeFieldElem {
    assert_eq!(alpha.len(), beta.len(), "multi-index lengths differ");
    let mut acc = 1u64;
    for (&a, &b) in alpha.iter().zip(beta) {
        assert!(a >= 0 && b >= 0, "multi-binomial needs nonnegative indices");
        acc = acc * lucas_binom_mod_p((a + b) as u64, a as u64, p) % p;
        if acc == 0 {
            break;
        }
    }
    PrimeFieldElem(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn binom_int_examples() {
        assert_eq!(binom_int(5, 0), BigInt::from(1));
        assert_eq!(binom_int(-1, 2), BigInt::from(1));
        assert_eq!(binom_int(2, 2), BigInt::from(1));
        assert_eq!(binom_int(-3, 3), BigInt::from(-10));
        assert_eq!(binom_int(4, 6), BigInt::from(0));
    }

    #[test]
    fn pascal_rule() {
        for a in -50i64..=50 {
            for r in 1u32..=10 {
                assert_eq!(
                    binom_int(a, r),
                    binom_int(a - 1, r) + binom_int(a - 1, r - 1),
                    "a={a} r={r}"
                );
            }
        }
    }

    #[test]
    fn multi_binom_examples() {
        assert_eq!(multi_binom_mod_p(&[1], &[1], 3), PrimeFieldElem(2));
        assert_eq!(multi_binom_mod_p(&[2], &[2], 3), PrimeFieldElem(0));
        assert_eq!(multi_binom_mod_p(&[0, 0], &[4, 7], 5), PrimeFieldElem(1));
    }

    #[test]
    fn lucas_matches_direct_reduction() {
        for p in [3u64, 5, 7] {
            for a in 0..=2 * p {
                for b in 0..=2 * p {
                    let direct = binom_int((a + b) as i64, a as u32) % BigInt::from(p);
                    assert_eq!(
                        multi_binom_mod_p(&[a as i64], &[b as i64], p).0,
                        direct.to_u64().unwrap(),
                        "p={p} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn rational_binomial_half() {
        // binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(binom_rational(&half, 2), Rational::new((-1).into(), 8.into()));
    }
}
