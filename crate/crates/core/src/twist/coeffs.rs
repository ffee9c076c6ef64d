use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::liealg::{pairing, LieError, RMatrixData};
use crate::ring::{factorial, lucas_binom_mod_p, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient sequences of the deformed coproduct for one basis symbol and
/// one twist direction, for `l = 0, 1, ...`.
///
/// `a`, `b`, `c = a - b` are the characteristic-zero sequences; `abar`,
/// `bbar`, `cbar` are their images `l! binom(alpha_k + l, l) (.)` mod `p` when
/// a prime is given.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistCoefficients {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    pub abar: Vec<u64>,
    pub bbar: Vec<u64>,
    pub cbar: Vec<u64>,
}

impl TwistCoefficients {
    /// Sequences for `x^alpha D_i` under the basic twist in direction `k`
    /// (0-based), with `A_l = prod_{j<l} (alpha_k - delta_ik + j) / l!` and
    /// `B_l = delta_ik A_{l-1}`.
    pub fn basic(alpha_k: i64, delta: bool, len: usize, p: Option<u64>) -> Self {
        let d = i64::from(delta);
        let mut a = Vec::with_capacity(len);
        for l in 0..len {
            let prod = (0..l as i64).fold(BigInt::one(), |acc, j| acc * (alpha_k - d + j));
            a.push(Rational::new(prod, factorial(l as u64)));
        }
        let b: Vec<Rational> = (0..len)
            .map(|l| if l == 0 { q(0) } else { &a[l - 1] * q(d) })
            .collect();
        let c: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let (mut abar, mut bbar, mut cbar) = (Vec::new(), Vec::new(), Vec::new());
        if let Some(p) = p {
            for l in 0..len {
                let w = weight(alpha_k, l as u64, p);
                let ab = reduce_scaled(&a[l], l as u64, w, p);
                let bb = reduce_scaled(&b[l], l as u64, w, p);
                abar.push(ab);
                bbar.push(bb);
                cbar.push((ab + p - bb) % p);
            }
        }
        TwistCoefficients {
            a,
            b,
            c,
            abar,
            bbar,
            cbar,
        }
    }
}

/// `binom(alpha_k + l, l)` mod `p`.
fn weight(alpha_k: i64, l: u64, p: u64) -> u64 {
    lucas_binom_mod_p(alpha_k as u64 + l, l, p)
}

/// `l! * x * w` mod `p`, where `l! x` is an integer.
fn reduce_scaled(x: &Rational, l: u64, w: u64, p: u64) -> u64 {
    let scaled = x * Rational::from_integer(factorial(l));
    debug_assert!(scaled.is_integer());
    let r = scaled.to_integer() % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    let r: u64 = r.try_into().expect("reduced below p");
    r * w % p
}

/// `Cbar_l` for `x^(alpha) D_i` in direction `k`, straight from integers:
/// `binom(alpha_k + l, l) (prod_{j<l} (alpha_k - d + j) - d l prod_{j<l-1} (alpha_k - d + j))`.
pub fn modular_cbar(alpha_k: i64, delta: bool, l: u64, p: u64) -> u64 {
    let d = i64::from(delta);
    let rising = |m: u64| (0..m as i64).fold(BigInt::one(), |acc, j| acc * (alpha_k - d + j));
    let mut v = rising(l);
    if l > 0 {
        v -= BigInt::from(d) * BigInt::from(l) * rising(l - 1);
    }
    let pm = BigInt::from(p);
    let v = ((v % &pm) + &pm) % &pm;
    let v: u64 = v.try_into().expect("reduced below p");
    v * weight(alpha_k, l, p) % p
}

/// `A_l = r^l / l! prod_{j<l} <d0', alpha + j gamma>` of the general r-matrix setting.
pub fn general_a(rm: &RMatrixData, alpha: &[i64], l: usize) -> Result<Rational, LieError> {
    let r = Rational::from_integer(rm.pairing_value().clone());
    let mut acc = q(1);
    for j in 0..l as i64 {
        let shifted: Vec<i64> = alpha.iter().zip(&rm.gamma).map(|(a, g)| a + j * g).collect();
        acc *= &r * pairing(&rm.d0p, &shifted)?;
    }
    Ok(acc / Rational::from_integer(factorial(l as u64)))
}

/// `B_l = r gamma_j A_{l-1}`, where `j` (0-based) is the derivation index.
pub fn general_b(rm: &RMatrixData, alpha: &[i64], j: usize, l: usize) -> Result<Rational, LieError> {
    if l == 0 {
        return Ok(q(0));
    }
    let r = Rational::from_integer(rm.pairing_value().clone());
    Ok(r * q(rm.gamma[j]) * general_a(rm, alpha, l - 1)?)
}

/// `a^l prod_{j<l} (k + j a) / l!`, an integer for all integers `a, k, l`.
pub fn scaled_rising_value(a: i64, k: i64, l: u64) -> Rational {
    let prod = (0..l as i64).fold(BigInt::one(), |acc, j| acc * (k + j * a));
    Rational::new(BigInt::from(a).pow(l as u32) * prod, factorial(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_rising_example() {
        assert_eq!(scaled_rising_value(2, 3, 3), q(140));
        for a in -10..=10 {
            for k in -10..=10 {
                for l in 0..=10 {
                    assert!(scaled_rising_value(a, k, l).is_integer(), "{a} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn basic_sequences_start_trivially() {
        for alpha_k in 0..4 {
            for delta in [false, true] {
                let t = TwistCoefficients::basic(alpha_k, delta, 6, Some(5));
                assert_eq!(t.c[0], q(1));
                assert_eq!(t.cbar[0], 1);
                assert!(t.c.iter().all(|c| c.is_integer()));
            }
        }
    }

    #[test]
    fn cbar_agrees_with_reduced_sequences() {
        for p in [3u64, 5, 7] {
            for alpha_k in 0..p as i64 {
                for delta in [false, true] {
                    if delta && alpha_k == 0 {
                        continue;
                    }
                    let t = TwistCoefficients::basic(alpha_k, delta, p as usize, Some(p));
                    for l in 0..p {
                        assert_eq!(t.cbar[l as usize], modular_cbar(alpha_k, delta, l, p));
                    }
                }
            }
        }
    }

    #[test]
    fn toral_symbol_first_coefficient() {
        // x^(e_k) D_k: C_1 = A_1 - B_1 = 0 - 1, weighted by binom(2, 1) = 2.
        let t = TwistCoefficients::basic(1, true, 2, Some(3));
        assert_eq!(t.c[1], q(-1));
        assert_eq!(t.cbar[1], 1);
    }
}
