use num_bigint::BigInt;
use smallvec::SmallVec;

use super::{CoeffRing, Rational, Ring, RingError, ScalarText};

/// How degrees at or beyond the bound are folded back.
#[derive(Debug, Clone, PartialEq)]
pub enum TMode<E> {
    /// `t^cap = 0`.
    Series { cap: usize },
    /// `t^p = q t`, where `p` is the characteristic of the base field.
    Quotient { q: E },
}

/// A polynomial in `t`, stored densely by degree with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct TPoly<E> {
    coeffs: SmallVec<[E; 5]>,
}

impl<E> TPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Highest stored degree plus one.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `B[t]` truncated in series or quotient mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TPolyRing<B: Ring> {
    base: B,
    mode: TMode<B::Elem>,
}

impl<B: Ring> TPolyRing<B> {
    pub fn series(base: B, cap: usize) -> Result<Self, RingError> {
        if cap == 0 {
            return Err(RingError::BadCap);
        }
        Ok(TPolyRing {
            base,
            mode: TMode::Series { cap },
        })
    }

    /// `B[t]/(t^p - q t)`; the base must have prime characteristic `p`.
    pub fn quotient(base: B, q: B::Elem) -> Result<Self, RingError> {
        let p = base.characteristic();
        if p < 3 {
            return Err(RingError::BadModulus(p));
        }
        Ok(TPolyRing {
            base,
            mode: TMode::Quotient { q },
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn mode(&self) -> &TMode<B::Elem> {
        &self.mode
    }

    /// Number of distinct powers of `t` that survive: `cap` or `p`.
    pub fn bound(&self) -> usize {
        match &self.mode {
            TMode::Series { cap } => *cap,
            TMode::Quotient { .. } => self.base.characteristic() as usize,
        }
    }

    pub fn constant(&self, c: B::Elem) -> TPoly<B::Elem> {
        self.from_coeffs(vec![c])
    }

    /// Builds a polynomial from arbitrary-length coefficients, reducing by the mode.
    pub fn from_coeffs(&self, coeffs: Vec<B::Elem>) -> TPoly<B::Elem> {
        let mut v: SmallVec<[B::Elem; 5]> = coeffs.into();
        self.reduce(&mut v);
        TPoly { coeffs: v }
    }

    pub fn coeff(&self, f: &TPoly<B::Elem>, k: usize) -> B::Elem {
        f.coeffs.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// `f` with `t = 0`.
    pub fn at_zero(&self, f: &TPoly<B::Elem>) -> B::Elem {
        self.coeff(f, 0)
    }

    pub fn scale(&self, f: &TPoly<B::Elem>, c: &B::Elem) -> TPoly<B::Elem> {
        let v: SmallVec<[B::Elem; 5]> = f.coeffs.iter().map(|a| self.base.mul(a, c)).collect();
        let mut out = TPoly { coeffs: v };
        self.trim(&mut out.coeffs);
        out
    }

    fn trim(&self, v: &mut SmallVec<[B::Elem; 5]>) {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
    }

    fn reduce(&self, v: &mut SmallVec<[B::Elem; 5]>) {
        match &self.mode {
            TMode::Series { cap } => v.truncate(*cap),
            TMode::Quotient { q } => {
                let p = self.base.characteristic() as usize;
                let mut d = v.len();
                while d > p {
                    d -= 1;
                    let c = std::mem::replace(&mut v[d], self.base.zero());
                    if !self.base.is_zero(&c) {
                        let folded = self.base.mul(&c, q);
                        self.base.add_assign(&mut v[d + 1 - p], &folded);
                    }
                }
                v.truncate(p);
            }
        }
        self.trim(v);
    }
}

impl<B: Ring> Ring for TPolyRing<B> {
    type Elem = TPoly<B::Elem>;

    fn zero(&self) -> Self::Elem {
        TPoly {
            coeffs: SmallVec::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), self.base.zero());
        }
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            self.base.add_assign(x, y);
        }
        self.trim(&mut a.coeffs);
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TPoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let full = a.coeffs.len() + b.coeffs.len() - 1;
        let len = match &self.mode {
            TMode::Series { cap } => full.min(*cap),
            TMode::Quotient { .. } => full,
        };
        let mut v: SmallVec<[B::Elem; 5]> = SmallVec::from_elem(self.base.zero(), len);
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let prod = self.base.mul(x, y);
                self.base.add_assign(&mut v[i + j], &prod);
            }
        }
        self.reduce(&mut v);
        TPoly { coeffs: v }
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_bigint(n))
    }

    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, RingError> {
        Ok(self.constant(self.base.from_rational(q)?))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn descriptor(&self) -> CoeffRing {
        match &self.mode {
            TMode::Series { cap } => CoeffRing::Series {
                base: Box::new(self.base.descriptor()),
                cap: *cap,
            },
            TMode::Quotient { q } => {
                let text = self.base.scalar_terms(q);
                let q = text
                    .first()
                    .map(|(_, s)| s.magnitude.parse::<u64>().unwrap_or(0))
                    .unwrap_or(0);
                CoeffRing::Quotient {
                    p: self.base.characteristic(),
                    q,
                }
            }
        }
    }

    fn t_pow(&self, k: usize) -> Result<Self::Elem, RingError> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = self.base.one();
        Ok(self.from_coeffs(v))
    }

    fn scalar_terms(&self, a: &Self::Elem) -> Vec<(usize, ScalarText)> {
        a.coeffs
            .iter()
            .enumerate()
            .flat_map(|(d, c)| self.base.scalar_terms(c).into_iter().map(move |(_, s)| (d, s)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, PrimeFieldElem, RationalField};
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn quot(p: u64, q: u64) -> TPolyRing<PrimeField> {
        TPolyRing::quotient(gf(p), PrimeFieldElem(q)).unwrap()
    }

    fn poly(r: &TPolyRing<PrimeField>, c: &[u64]) -> TPoly<PrimeFieldElem> {
        r.from_coeffs(c.iter().map(|&x| PrimeFieldElem(x)).collect())
    }

    #[test]
    fn quotient_examples() {
        let r = quot(3, 1);
        let t = r.t_pow(1).unwrap();
        let t2 = r.t_pow(2).unwrap();
        assert_eq!(r.mul(&t2, &t), t);
        let r0 = quot(3, 0);
        let s2 = r0.t_pow(2).unwrap();
        assert!(r0.is_zero(&r0.mul(&s2, &s2)));
    }

    #[test]
    fn series_example() {
        let r = TPolyRing::series(RationalField, 3).unwrap();
        let f = r.from_coeffs(vec![r.base().one(), r.base().one()]);
        let sq = r.mul(&f, &f);
        let expect = r.from_coeffs(vec![
            r.base().from_int(1),
            r.base().from_int(2),
            r.base().from_int(1),
        ]);
        assert_eq!(sq, expect);
        assert_eq!(TPolyRing::series(RationalField, 0), Err(RingError::BadCap));
    }

    #[test]
    fn defining_relation_vanishes() {
        for p in [3u64, 5, 7] {
            for q in 0..p {
                let r = quot(p, q);
                let tp = r.t_pow(p as usize).unwrap();
                let qt = r.scale(&r.t_pow(1).unwrap(), &PrimeFieldElem(q));
                assert!(r.is_zero(&r.sub(&tp, &qt)), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn quotient_needs_prime_base() {
        assert!(TPolyRing::quotient(RationalField, Rational::from_integer(0.into())).is_err());
    }

    fn arb_coeffs(p: u64) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..p, 0..8)
    }

    proptest! {
        #[test]
        fn quotient_mul_assoc_comm(q in 0u64..5, a in arb_coeffs(5), b in arb_coeffs(5), c in arb_coeffs(5)) {
            let r = quot(5, q);
            let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert!(a.len() <= 5);
        }

        #[test]
        fn series_mul_assoc_comm(a in arb_coeffs(7), b in arb_coeffs(7), c in arb_coeffs(7)) {
            let r = TPolyRing::series(gf(7), 4).unwrap();
            let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        }

        // Polynomials of degree < p multiplied in t-series of cap >= 2p lose nothing,
        // so folding afterwards must agree with multiplying in the quotient.
        #[test]
        fn folding_is_multiplicative(q in 0u64..3, a in arb_coeffs(3), b in arb_coeffs(3)) {
            let p = 3usize;
            let series = TPolyRing::series(gf(3), 2 * p).unwrap();
            let r = quot(3, q);
            let a: Vec<u64> = a.into_iter().take(p).collect();
            let b: Vec<u64> = b.into_iter().take(p).collect();
            let prod = series.mul(&poly(&series, &a), &poly(&series, &b));
            let folded = r.from_coeffs(prod.coeffs().to_vec());
            prop_assert_eq!(folded, r.mul(&poly(&r, &a), &poly(&r, &b)));
        }
    }
}
