//! Drinfel'd twists built from a pair `[h, e] = e` and the Hopf structures
//! they induce.
//!
//! One [`Quantized`] context covers every setting: the general r-matrix twist
//! on the Witt algebra, products of basic twists on `W+`, and their modular
//! images on `W(n;1)` (over a truncated series ring in the full enveloping
//! algebra, or over `K[t]/(t^p - qt)` in the restricted one). The settings
//! differ only in the exponents `c_k`, the coefficient sequences and the
//! summation bounds.

mod coeffs;
mod series;

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::liealg::{BasisDeriv, Flavor, LieAlgebra, LieError, RMatrixData};
use crate::ring::{CoeffRing, Rational, Ring, RingError};
use crate::uea::{Element, FactorialKind, Mode, Monomial, Tensor, Uea, UeaError};

pub use coeffs::{general_a, general_b, scaled_rising_value, modular_cbar, TwistCoefficients};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistError {
    #[error("the twist needs at least one direction")]
    NoDirections,
    #[error("direction {0} is out of range or repeated")]
    BadDirection(usize),
    #[error("setting needs the {expected} algebra, got {got}")]
    FlavorMismatch { expected: String, got: String },
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),
    #[error("the coefficient ring has no usable indeterminate ({0})")]
    BadRing(String),
    #[error(transparent)]
    Uea(#[from] UeaError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Which twist is applied.
#[derive(Debug, Clone, PartialEq)]
pub enum Setting {
    /// The twist of an r-matrix `(d0, d0', gamma)` on the Witt algebra.
    General(RMatrixData),
    /// The ordered product of basic twists on `W+`, over 1-based directions.
    Basic { eta: Vec<usize> },
    /// The ordered product of basic twists on `W(n;1)`.
    Modular { eta: Vec<usize> },
}

impl Setting {
    /// Directions from a 0/1 vector.
    pub fn eta_directions(eta: &[bool]) -> Vec<usize> {
        eta.iter()
            .enumerate()
            .filter(|(_, &on)| on)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

/// A distinguished pair driving one basic factor of the twist.
#[derive(Debug, Clone)]
pub struct Direction<R: Ring> {
    /// 1-based variable index, `None` in the general setting.
    pub k: Option<usize>,
    pub h: Element<R>,
    pub e: Element<R>,
}

/// The twist `F` (forward) with its inverse.
#[derive(Debug, Clone)]
pub struct TwistElement<R: Ring> {
    pub forward: Tensor<R>,
    pub inverse: Tensor<R>,
}

/// The antipode twistors `v = m(Id (x) S0)(F)` and `u = m(S0 (x) Id)(F^-1)`.
#[derive(Debug, Clone)]
pub struct TwistorPair<R: Ring> {
    pub v: Element<R>,
    pub u: Element<R>,
}

type PowerKey = (usize, Rational);

/// A twisted Hopf structure on one enveloping algebra.
pub struct Quantized<R: Ring> {
    uea: Arc<Uea<R>>,
    setting: Setting,
    dirs: Vec<Direction<R>>,
    /// Exclusive bound on `t`-degrees that survive (series rings).
    t_cap: Option<usize>,
    /// Exclusive bound on each summation index (modular settings).
    l_cap: Option<usize>,
    rational_exponents: bool,
    powers: DashMap<PowerKey, Element<R>>,
    rising: DashMap<(usize, i64, u64), Element<R>>,
    delta_cache: DashMap<Monomial, Tensor<R>>,
    antipode_cache: DashMap<Monomial, Element<R>>,
}

impl<R: Ring> std::fmt::Debug for Quantized<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quantized")
            .field("uea", &self.uea)
            .field("setting", &self.setting)
            .finish()
    }
}

fn expect_flavor(lie: LieAlgebra, ok: bool, expected: &str) -> Result<(), TwistError> {
    if ok {
        Ok(())
    } else {
        Err(TwistError::FlavorMismatch {
            expected: expected.into(),
            got: lie.flavor().to_string(),
        })
    }
}

impl<R: Ring> Quantized<R> {
    pub fn new(uea: Arc<Uea<R>>, setting: Setting) -> Result<Self, TwistError> {
        let lie = uea.lie();
        let ring = uea.ring().clone();
        let t_cap = match ring.descriptor() {
            CoeffRing::Series { cap, .. } => Some(cap),
            CoeffRing::Quotient { .. } => None,
            other => return Err(TwistError::BadRing(other.to_string())),
        };
        if t_cap.is_none() && uea.mode() != Mode::Restricted {
            return Err(TwistError::BadRing(
                "t^p = qt needs the restricted enveloping algebra".into(),
            ));
        }
        let dirs = match &setting {
            Setting::General(rm) => {
                expect_flavor(lie, lie.flavor() == Flavor::Witt && lie.n() == rm.n(), "W")?;
                let lift = |x: crate::liealg::LieElement<crate::ring::RationalField>| {
                    let mut out = uea.zero();
                    for (b, c) in &x.terms {
                        out = &out + &uea.gen(*b)?.scale(&ring.from_rational(c)?);
                    }
                    Ok::<_, TwistError>(out)
                };
                vec![Direction {
                    k: None,
                    h: lift(rm.h(lie)?)?,
                    e: lift(rm.e(lie)?)?,
                }]
            }
            Setting::Basic { eta } | Setting::Modular { eta } => {
                let modular = matches!(setting, Setting::Modular { .. });
                if modular {
                    expect_flavor(lie, lie.p().is_some(), "W(n;1)")?;
                } else {
                    expect_flavor(lie, lie.flavor() == Flavor::WittPlus, "W+")?;
                }
                if eta.is_empty() {
                    return Err(TwistError::NoDirections);
                }
                let mut dirs = Vec::with_capacity(eta.len());
                let mut last = 0;
                for &k in eta {
                    if k <= last || k > lie.n() {
                        return Err(TwistError::BadDirection(k));
                    }
                    last = k;
                    let (hb, (eb, ec)) = lie.basic_pair(k);
                    dirs.push(Direction {
                        k: Some(k),
                        h: uea.gen(hb)?,
                        e: uea.gen(eb)?.scale_int(ec),
                    });
                }
                dirs
            }
        };
        let l_cap = match setting {
            Setting::Modular { .. } => lie.p().map(|p| p as usize),
            _ => None,
        };
        Ok(Quantized {
            uea,
            setting,
            dirs,
            t_cap,
            l_cap,
            rational_exponents: false,
            powers: DashMap::new(),
            rising: DashMap::new(),
            delta_cache: DashMap::new(),
            antipode_cache: DashMap::new(),
        })
    }

    /// Allows non-integral exponents `<d0, alpha>/<d0, gamma>` in the general
    /// setting, expanded as formal binomial series.
    pub fn with_rational_exponents(mut self, on: bool) -> Self {
        self.rational_exponents = on;
        self
    }

    pub fn uea(&self) -> &Arc<Uea<R>> {
        &self.uea
    }

    pub fn setting(&self) -> &Setting {
        &self.setting
    }

    pub fn directions(&self) -> &[Direction<R>] {
        &self.dirs
    }

    fn ring(&self) -> &R {
        self.uea.ring()
    }

    /// Exclusive bound on the twist series index `r`.
    fn r_cap(&self) -> usize {
        match (self.t_cap, self.uea.lie().p()) {
            (Some(cap), _) => cap,
            (None, Some(p)) => p as usize,
            (None, None) => unreachable!("quotient rings are modular"),
        }
    }

    /// `t^k`, or `None` once it vanishes.
    fn t(&self, k: usize) -> Option<R::Elem> {
        if self.t_cap.is_some_and(|cap| k >= cap) {
            return None;
        }
        Some(self.ring().t_pow(k).expect("rings here carry t"))
    }

    /// `h_a^<r>` for direction `d`.
    fn h_rising(&self, d: usize, a: i64, r: u64) -> Element<R> {
        if let Some(hit) = self.rising.get(&(d, a, r)) {
            return hit.clone();
        }
        let h = &self.dirs[d].h;
        let out = h.factorial(&self.ring().from_int(a), r, FactorialKind::Rising);
        self.rising.insert((d, a, r), out.clone());
        out
    }

    /// The exponents `c_k` of `x` along each direction.
    pub fn exponents(&self, x: BasisDeriv) -> Result<Vec<Rational>, TwistError> {
        match &self.setting {
            Setting::General(rm) => {
                let c = rm.exponent(&x.alpha())?;
                if !c.is_integer() && !self.rational_exponents {
                    return Err(TwistError::NonIntegralExponent(c.to_string()));
                }
                Ok(vec![c])
            }
            Setting::Basic { .. } | Setting::Modular { .. } => Ok(self
                .dirs
                .iter()
                .map(|d| {
                    let k = d.k.expect("basic directions") - 1;
                    let delta = i64::from(x.index() == k + 1);
                    Rational::from_integer(BigInt::from(x.exp(k) - delta))
                })
                .collect()),
        }
    }

    /// All multi-indices `l` with a nonvanishing `t^{|l|}` and each `l_k`
    /// below the modular bound.
    fn multi_indices(&self) -> Vec<Vec<u64>> {
        let per = match (self.l_cap, self.t_cap) {
            (Some(l), Some(t)) => l.min(t),
            (Some(l), None) => l,
            (None, Some(t)) => t,
            (None, None) => unreachable!("some bound applies"),
        };
        let mut out: Vec<Vec<u64>> = vec![Vec::new()];
        for _ in &self.dirs {
            let mut next = Vec::new();
            for prefix in &out {
                for l in 0..per as u64 {
                    let mut v = prefix.clone();
                    v.push(l);
                    let total: u64 = v.iter().sum();
                    if self.t_cap.is_some_and(|cap| total as usize >= cap) {
                        continue;
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// `d^(l)(x)` in closed form: the divided ad-powers of the `e`'s applied
    /// to a basis symbol.
    pub fn d_closed(&self, x: BasisDeriv, ell: &[u64]) -> Result<Element<R>, TwistError> {
        let ring = self.ring();
        let lie = self.uea.lie();
        match &self.setting {
            Setting::General(rm) => {
                let l = ell[0] as usize;
                let alpha = x.alpha();
                let shift: Vec<i64> = rm.gamma.iter().map(|g| g * l as i64).collect();
                let Some(target) = x.shifted(&shift) else {
                    return Err(LieError::ExponentRange(alpha[0] + shift[0]).into());
                };
                let j = x.index() - 1;
                let a = general_a(rm, &alpha, l)?;
                let b = general_b(rm, &alpha, j, l)?;
                let mut out = self.uea.gen(target)?.scale(&ring.from_rational(&a)?);
                if !b.is_zero() {
                    for (idx, c) in rm.d0p.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let term = self.uea.gen(target.with_index(idx + 1))?;
                        out = &out - &term.scale(&ring.from_rational(&(&b * c))?);
                    }
                }
                Ok(out)
            }
            Setting::Basic { .. } => {
                let mut coeff = Rational::from_integer(1.into());
                let mut shift = vec![0i64; lie.n()];
                for (d, &l) in self.dirs.iter().zip(ell) {
                    let k = d.k.expect("basic") - 1;
                    let seq =
                        TwistCoefficients::basic(x.exp(k), x.index() == k + 1, l as usize + 1, None);
                    coeff *= &seq.c[l as usize];
                    shift[k] += l as i64;
                }
                if coeff.is_zero() {
                    return Ok(self.uea.zero());
                }
                let target = x
                    .shifted(&shift)
                    .ok_or(LieError::ExponentRange(crate::liealg::MAX_EXP + 1))?;
                Ok(self.uea.gen(target)?.scale(&ring.from_rational(&coeff)?))
            }
            Setting::Modular { .. } => {
                let p = lie.p().expect("modular");
                let mut coeff = 1u64;
                let mut shift = vec![0i64; lie.n()];
                for (d, &l) in self.dirs.iter().zip(ell) {
                    let k = d.k.expect("basic") - 1;
                    if x.exp(k) + l as i64 >= p as i64 {
                        return Ok(self.uea.zero());
                    }
                    coeff = coeff * modular_cbar(x.exp(k), x.index() == k + 1, l, p) % p;
                    shift[k] += l as i64;
                }
                if coeff == 0 {
                    return Ok(self.uea.zero());
                }
                let target = x.shifted(&shift).expect("within W(n;1)");
                Ok(self.uea.gen(target)?.scale_int(coeff as i64))
            }
        }
    }

    /// `prod_k (1 - e_k t)^{m_k}`.
    fn power_product(&self, m: &[Rational]) -> Result<Element<R>, TwistError> {
        let mut acc = self.uea.one();
        for (d, mk) in m.iter().enumerate() {
            acc = &acc * &self.one_minus_et_power(d, mk)?;
        }
        Ok(acc)
    }

    /// Closed-form deformed coproduct of a basis symbol:
    /// `x (x) prod (1 - e_k t)^{c_k} + sum_l (-1)^{|l|} prod h_k^<l_k> (x) prod (1 - e_k t)^{-l_k} d^(l)(x) t^{|l|}`.
    pub fn delta_generator(&self, x: BasisDeriv) -> Result<Tensor<R>, TwistError> {
        let ring = self.ring();
        let c = self.exponents(x)?;
        let gx = self.uea.gen(x)?;
        let mut out = Tensor::pure(&[&gx, &self.power_product(&c)?])?;
        for ell in self.multi_indices() {
            let total: u64 = ell.iter().sum();
            let Some(tl) = self.t(total as usize) else {
                continue;
            };
            let d = self.d_closed(x, &ell)?;
            if d.is_zero() {
                continue;
            }
            let mut left = self.uea.one();
            for (k, &l) in ell.iter().enumerate() {
                left = &left * &self.h_rising(k, 0, l);
            }
            let neg: Vec<Rational> =
                ell.iter().map(|&l| Rational::from_integer(-BigInt::from(l))).collect();
            let right = &self.power_product(&neg)? * &d;
            let sign = if total % 2 == 1 { -1 } else { 1 };
            let scale = ring.mul_int(&tl, sign);
            out = &out + &Tensor::pure(&[&left, &right])?.scale(&scale);
        }
        Ok(out)
    }

    /// Closed-form deformed antipode of a basis symbol:
    /// `-prod (1 - e_k t)^{-c_k} sum_l d^(l)(x) prod h_{k,1}^<l_k> t^{|l|}`.
    pub fn antipode_generator(&self, x: BasisDeriv) -> Result<Element<R>, TwistError> {
        let c = self.exponents(x)?;
        let mut sum = self.uea.zero();
        for ell in self.multi_indices() {
            let total: u64 = ell.iter().sum();
            let Some(tl) = self.t(total as usize) else {
                continue;
            };
            let d = self.d_closed(x, &ell)?;
            if d.is_zero() {
                continue;
            }
            let mut right = d;
            for (k, &l) in ell.iter().enumerate() {
                right = &right * &self.h_rising(k, 1, l);
            }
            sum = &sum + &right.scale(&tl);
        }
        let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
        Ok(-(&self.power_product(&neg)? * &sum))
    }

    /// The deformed counit: zero on every basis symbol, hence the constant term.
    pub fn counit(&self, x: &Element<R>) -> R::Elem {
        x.constant_term()
    }

    /// Deformed coproduct of a normal monomial, as the product of the
    /// generator images.
    pub fn delta_monomial(&self, m: &Monomial) -> Result<Tensor<R>, TwistError> {
        if let Some(hit) = self.delta_cache.get(m) {
            return Ok(hit.clone());
        }
        let mut acc = Tensor::one(&self.uea, 2);
        for &(b, k) in m.factors() {
            let g = self.delta_generator_cached(b)?;
            for _ in 0..k {
                acc = &acc * &g;
            }
        }
        self.delta_cache.insert(m.clone(), acc.clone());
        Ok(acc)
    }

    fn delta_generator_cached(&self, b: BasisDeriv) -> Result<Tensor<R>, TwistError> {
        let key = Monomial::gen(b);
        if let Some(hit) = self.delta_cache.get(&key) {
            return Ok(hit.clone());
        }
        let g = self.delta_generator(b)?;
        self.delta_cache.insert(key, g.clone());
        Ok(g)
    }

    /// Deformed antipode of a normal monomial, reversing the factor order.
    pub fn antipode_monomial(&self, m: &Monomial) -> Result<Element<R>, TwistError> {
        if let Some(hit) = self.antipode_cache.get(m) {
            return Ok(hit.clone());
        }
        let mut acc = self.uea.one();
        for &(b, k) in m.factors().iter().rev() {
            let key = Monomial::gen(b);
            let g = match self.antipode_cache.get(&key) {
                Some(hit) => hit.clone(),
                None => {
                    let g = self.antipode_generator(b)?;
                    self.antipode_cache.insert(key, g.clone());
                    g
                }
            };
            for _ in 0..k {
                acc = &acc * &g;
            }
        }
        self.antipode_cache.insert(m.clone(), acc.clone());
        Ok(acc)
    }

    pub fn delta(&self, x: &Element<R>) -> Result<Tensor<R>, TwistError> {
        let mut out = Tensor::zero(&self.uea, 2);
        for (m, c) in x.terms() {
            out = &out + &self.delta_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    pub fn antipode(&self, x: &Element<R>) -> Result<Element<R>, TwistError> {
        let mut out = self.uea.zero();
        for (m, c) in x.terms() {
            out = &out + &self.antipode_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// Applies the deformed coproduct to one slot of a tensor.
    pub fn delta_slot(&self, x: &Tensor<R>, slot: usize) -> Result<Tensor<R>, TwistError> {
        for key in x.terms().keys() {
            self.delta_monomial(&key[slot])?;
        }
        Ok(x.split_slot(slot, |m| self.delta_monomial(m).expect("primed above")))
    }

    /// Applies the deformed antipode to one slot of a tensor.
    pub fn antipode_slot(&self, x: &Tensor<R>, slot: usize) -> Result<Tensor<R>, TwistError> {
        for key in x.terms().keys() {
            self.antipode_monomial(&key[slot])?;
        }
        Ok(x.map_slot(slot, |m| self.antipode_monomial(m).expect("primed above")))
    }

    /// The basic twist of one direction with shift `a`,
    /// `sum_r (-1)^r / r! h_a^[r] (x) e^r t^r`, and its inverse
    /// `sum_r 1/r! h_a^<r> (x) e^r t^r`.
    pub fn basic_twist(&self, d: usize, a: &R::Elem) -> Result<TwistElement<R>, TwistError> {
        let ring = self.ring();
        let dir = &self.dirs[d];
        let mut forward = Tensor::zero(&self.uea, 2);
        let mut inverse = Tensor::zero(&self.uea, 2);
        let mut e_pow = self.uea.one();
        for r in 0..self.r_cap() as u64 {
            let Some(tr) = self.t(r as usize) else { break };
            if e_pow.is_zero() {
                break;
            }
            let inv = ring.inv_factorial(r)?;
            let hf = dir.h.factorial(a, r, FactorialKind::Falling);
            let hr = dir.h.factorial(a, r, FactorialKind::Rising);
            let c = ring.mul(&inv, &tr);
            let signed = if r % 2 == 1 { ring.neg(&c) } else { c.clone() };
            forward = &forward + &Tensor::pure(&[&hf, &e_pow])?.scale(&signed);
            inverse = &inverse + &Tensor::pure(&[&hr, &e_pow])?.scale(&c);
            e_pow = &e_pow * &dir.e;
        }
        Ok(TwistElement { forward, inverse })
    }

    /// The full twist: the ascending product of the basic twists, with the
    /// inverse multiplied in reverse order.
    pub fn twist(&self) -> Result<TwistElement<R>, TwistError> {
        let zero = self.ring().zero();
        let mut forward = Tensor::one(&self.uea, 2);
        let mut inverse = Tensor::one(&self.uea, 2);
        for d in 0..self.dirs.len() {
            let basic = self.basic_twist(d, &zero)?;
            forward = &forward * &basic.forward;
            inverse = &basic.inverse * &inverse;
        }
        Ok(TwistElement { forward, inverse })
    }

    /// `v_a = sum_r 1/r! h_a^[r] e^r t^r` and `u_a = sum_r (-1)^r / r! h_{-a}^[r] e^r t^r`
    /// for one direction.
    pub fn antipode_twistors(&self, d: usize, a: &R::Elem) -> Result<TwistorPair<R>, TwistError> {
        let ring = self.ring();
        let dir = &self.dirs[d];
        let mut v = self.uea.zero();
        let mut u = self.uea.zero();
        let mut e_pow = self.uea.one();
        let neg_a = ring.neg(a);
        for r in 0..self.r_cap() as u64 {
            let Some(tr) = self.t(r as usize) else { break };
            if e_pow.is_zero() {
                break;
            }
            let c = ring.mul(&ring.inv_factorial(r)?, &tr);
            let signed = if r % 2 == 1 { ring.neg(&c) } else { c.clone() };
            v = &v + &(&dir.h.factorial(a, r, FactorialKind::Falling) * &e_pow).scale(&c);
            u = &u + &(&dir.h.factorial(&neg_a, r, FactorialKind::Falling) * &e_pow).scale(&signed);
            e_pow = &e_pow * &dir.e;
        }
        Ok(TwistorPair { v, u })
    }

    /// Brute-force images `F Delta0(x) F^-1` and `w S0(x) w^-1`, with
    /// `w = m(Id (x) S0)(F)` and `w^-1 = m(S0 (x) Id)(F^-1)`.
    pub fn conjugation_oracle(
        &self,
        twist: &TwistElement<R>,
        x: &Element<R>,
    ) -> (Tensor<R>, Element<R>) {
        let delta = &(&twist.forward * &x.delta0()) * &twist.inverse;
        let w = twist.forward.antipode0_slot(1).multiply();
        let w_inv = twist.inverse.antipode0_slot(0).multiply();
        let s = &(&w * &x.antipode0()) * &w_inv;
        (delta, s)
    }

    /// Every symbol `x^alpha D_i` of the algebra's finite basis (`W(n;1)`).
    pub fn generators(&self) -> Vec<BasisDeriv> {
        self.uea.lie().jw_basis()
    }

}

#[cfg(test)]
mod tests;
