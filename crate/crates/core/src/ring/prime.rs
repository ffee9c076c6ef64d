use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CoeffRing, Rational, Ring, RingError, ScalarText};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `p`, if `a` is a unit.
pub(crate) fn inverse_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// A residue in `[0, p)`. The modulus lives in the owning [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PrimeFieldElem(pub u64);

/// `GF(p)` for a prime `p >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if p < 3 || !is_prime(p) || p > u32::MAX as u64 {
            return Err(RingError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> PrimeFieldElem {
        PrimeFieldElem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn inv(&self, a: &PrimeFieldElem) -> Result<PrimeFieldElem, RingError> {
        inverse_mod(a.0, self.p)
            .map(PrimeFieldElem)
            .ok_or_else(|| RingError::NotInvertible(a.0.to_string(), self.p))
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = PrimeFieldElem;

    fn zero(&self) -> PrimeFieldElem {
        PrimeFieldElem(0)
    }

    fn one(&self) -> PrimeFieldElem {
        PrimeFieldElem(1)
    }

    fn is_zero(&self, a: &PrimeFieldElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        let s = a.0 + b.0;
        PrimeFieldElem(if s >= self.p { s - self.p } else { s })
    }

    fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(a.0 * b.0 % self.p)
    }

    fn from_int(&self, n: i64) -> PrimeFieldElem {
        self.elem(n)
    }

    fn from_bigint(&self, n: &BigInt) -> PrimeFieldElem {
        PrimeFieldElem(self.reduce_bigint(n))
    }

    fn from_rational(&self, q: &Rational) -> Result<PrimeFieldElem, RingError> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(RingError::NotInvertible(q.to_string(), self.p));
        }
        let num = self.reduce_bigint(q.numer());
        let inv = self.inv(&PrimeFieldElem(den))?;
        Ok(self.mul(&PrimeFieldElem(num), &inv))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn descriptor(&self) -> CoeffRing {
        CoeffRing::PrimeField { p: self.p }
    }

    fn scalar_terms(&self, a: &PrimeFieldElem) -> Vec<(usize, ScalarText)> {
        if a.0 == 0 {
            return Vec::new();
        }
        vec![(
            0,
            ScalarText {
                negative: false,
                magnitude: a.0.to_string(),
            },
        )]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert_eq!(PrimeField::new(2), Err(RingError::BadModulus(2)));
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5 {
            let inv = f.inv(&PrimeFieldElem(a)).unwrap();
            assert_eq!(f.mul(&PrimeFieldElem(a), &inv), f.one());
        }
        assert!(f.inv(&PrimeFieldElem(0)).is_err());
    }

    #[test]
    fn rational_images() {
        let f = PrimeField::new(3).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), PrimeFieldElem(2));
        let third = Rational::new(1.into(), 3.into());
        assert!(f.from_rational(&third).is_err());
        assert_eq!(f.from_int(-1), PrimeFieldElem(2));
    }
}
