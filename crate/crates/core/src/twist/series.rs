use num_traits::ToPrimitive;

use super::{Quantized, TwistError};
use crate::ring::{binom_int, binom_rational, Rational, Ring};
use crate::uea::Element;

impl<R: Ring> Quantized<R> {
    /// `(1 - e t)^m` for direction `d`.
    ///
    /// Nonnegative integers use the finite binomial sum. Negative integers
    /// raise the geometric series `sum_{j<J} e^j t^j` to `|m|`, where `J` is
    /// the series cap, or `p` in the restricted algebra (where `e^p = 0`).
    /// Other rationals need the rational-exponent flag and a series ring.
    pub fn one_minus_et_power(&self, d: usize, m: &Rational) -> Result<Element<R>, TwistError> {
        let key = (d, m.clone());
        if let Some(hit) = self.powers.get(&key) {
            return Ok(hit.clone());
        }
        let ring = self.ring();
        let e = &self.dirs[d].e;
        let term = |j: usize, c: R::Elem| -> Option<Element<R>> {
            let tj = self.t(j)?;
            Some(e.pow(j as u64).scale(&ring.mul(&c, &tj)))
        };
        let out = if m.is_integer() {
            let mi = m
                .to_integer()
                .to_i64()
                .ok_or_else(|| TwistError::NonIntegralExponent(m.to_string()))?;
            if mi >= 0 {
                let mut acc = self.uea.zero();
                for j in 0..=mi as usize {
                    let c = binom_int(mi, j as u32);
                    let c = if j % 2 == 1 { -c } else { c };
                    match term(j, ring.from_bigint(&c)) {
                        Some(x) => acc = &acc + &x,
                        None => break,
                    }
                }
                acc
            } else {
                let bound = self.r_cap();
                let mut geo = self.uea.zero();
                for j in 0..bound {
                    match term(j, ring.one()) {
                        Some(x) if !x.is_zero() => geo = &geo + &x,
                        _ => break,
                    }
                }
                geo.pow(mi.unsigned_abs())
            }
        } else {
            if !self.rational_exponents {
                return Err(TwistError::NonIntegralExponent(m.to_string()));
            }
            let cap = self.t_cap.ok_or_else(|| {
                TwistError::BadRing("rational exponents need a truncated series ring".into())
            })?;
            let mut acc = self.uea.zero();
            for j in 0..cap {
                let mut c = binom_rational(m, j as u32);
                if j % 2 == 1 {
                    c = -c;
                }
                if let Some(x) = term(j, ring.from_rational(&c)?) {
                    acc = &acc + &x;
                }
            }
            acc
        };
        self.powers.insert(key, out.clone());
        Ok(out)
    }
}
