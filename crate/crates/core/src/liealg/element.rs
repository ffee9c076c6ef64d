use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BasisDeriv, Exps, Flavor, LieAlgebra, LieError};
use crate::ring::{factorial, PrimeField, Rational, RationalField, Ring};

/// Coefficients `a_i` of a degree derivation `sum a_i d_i`.
pub type TVector = Vec<Rational>;

/// `<d, alpha> = sum d_i alpha_i`.
pub fn pairing(d: &[Rational], alpha: &[i64]) -> Result<Rational, LieError> {
    if d.len() != alpha.len() {
        return Err(LieError::Length(d.len(), alpha.len()));
    }
    Ok(d.iter()
        .zip(alpha)
        .map(|(a, &b)| a * Rational::from_integer(BigInt::from(b)))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// A finite linear combination of basis symbols of one algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement<R: Ring> {
    pub alg: LieAlgebra,
    pub ring: R,
    pub terms: BTreeMap<BasisDeriv, R::Elem>,
}

impl<R: Ring> LieElement<R> {
    pub fn zero(alg: LieAlgebra, ring: R) -> Self {
        LieElement {
            alg,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(alg: LieAlgebra, ring: R, b: BasisDeriv) -> Self {
        let one = ring.one();
        Self::zero(alg, ring).plus_term(b, one)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus_term(mut self, b: BasisDeriv, c: R::Elem) -> Self {
        self.add_term(b, &c);
        self
    }

    pub fn add_term(&mut self, b: BasisDeriv, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                self.ring.add_assign(slot, c);
                if self.ring.is_zero(slot) {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.alg, self.ring.clone());
        for (b, x) in &self.terms {
            out.add_term(*b, &self.ring.mul(x, c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.from_int(-1))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.alg, self.ring.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = self.ring.mul(x, y);
                for (z, c) in self.alg.bracket(*a, *b) {
                    out.add_term(z, &self.ring.mul_int(&xy, c));
                }
            }
        }
        out
    }
}

/// `sum_j d_j x^alpha d_j` in the Witt algebra.
pub fn witt_field(
    alg: LieAlgebra,
    alpha: &[i64],
    d: &[Rational],
) -> Result<LieElement<RationalField>, LieError> {
    if alg.flavor() != Flavor::Witt {
        return Err(LieError::FlavorMismatch(
            alg.flavor().to_string(),
            Flavor::Witt.to_string(),
        ));
    }
    if d.len() != alg.n() {
        return Err(LieError::Length(d.len(), alg.n()));
    }
    let mut out = LieElement::zero(alg, RationalField);
    for (j, c) in d.iter().enumerate() {
        out.add_term(alg.basis(alpha, j + 1)?, c);
    }
    Ok(out)
}

/// The data `(d0, d0', gamma)` of a triangular r-matrix on the Witt algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrixData {
    pub d0: TVector,
    pub d0p: TVector,
    pub gamma: Vec<i64>,
    r: BigInt,
}

impl RMatrixData {
    pub fn new(d0: TVector, d0p: TVector, gamma: Vec<i64>) -> Result<Self, LieError> {
        if d0.len() != gamma.len() {
            return Err(LieError::Length(d0.len(), gamma.len()));
        }
        if d0p.len() != gamma.len() {
            return Err(LieError::Length(d0p.len(), gamma.len()));
        }
        let r = pairing(&d0, &gamma)?;
        if r.is_zero() || !r.is_integer() {
            return Err(LieError::DegeneratePairing);
        }
        Ok(RMatrixData {
            d0,
            d0p,
            gamma,
            r: r.to_integer(),
        })
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    /// `<d0, gamma>`.
    pub fn pairing_value(&self) -> &BigInt {
        &self.r
    }

    fn r(&self) -> Rational {
        Rational::from_integer(self.r.clone())
    }

    /// `h = <d0, gamma>^{-1} d0`.
    pub fn h(&self, alg: LieAlgebra) -> Result<LieElement<RationalField>, LieError> {
        let zero: Vec<i64> = vec![0; self.n()];
        let rinv = self.r().recip();
        let d: TVector = self.d0.iter().map(|a| a * &rinv).collect();
        witt_field(alg, &zero, &d)
    }

    /// `e = <d0, gamma> x^gamma d0'`.
    pub fn e(&self, alg: LieAlgebra) -> Result<LieElement<RationalField>, LieError> {
        let r = self.r();
        let d: TVector = self.d0p.iter().map(|a| a * &r).collect();
        witt_field(alg, &self.gamma, &d)
    }

    /// `<d0, alpha> / <d0, gamma>`.
    pub fn exponent(&self, alpha: &[i64]) -> Result<Rational, LieError> {
        Ok(pairing(&self.d0, alpha)? / self.r())
    }
}

/// Pushes a combination of `x^alpha D_i` over the rationals into `W(n;1)`:
/// `c x^alpha D_i` goes to `(c alpha!) x^(alpha) D_i`, and to zero when some
/// component of `alpha` reaches `p`.
pub fn reduce_wplus_to_jw(
    x: &LieElement<RationalField>,
    target: LieAlgebra,
) -> Result<LieElement<PrimeField>, LieError> {
    let p = target.p().ok_or_else(|| {
        LieError::FlavorMismatch(target.flavor().to_string(), "W(n;1)".into())
    })?;
    if x.alg.flavor() != Flavor::WittPlus || x.alg.n() != target.n() {
        return Err(LieError::FlavorMismatch(
            x.alg.flavor().to_string(),
            Flavor::WittPlus.to_string(),
        ));
    }
    let field = PrimeField::new(p).map_err(|_| LieError::BadModulus(p))?;
    let mut out = LieElement::zero(target, field);
    for (b, c) in &x.terms {
        let alpha: Exps = b.alpha();
        if alpha.iter().any(|&a| a >= p as i64) {
            continue;
        }
        let weight = alpha
            .iter()
            .fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
        let scaled = c * Rational::from_integer(weight);
        let image = field
            .from_rational(&scaled)
            .map_err(|_| LieError::NotReducible(c.to_string(), p))?;
        out.add_term(*b, &image);
    }
    Ok(out)
}
