//! Enveloping algebras of the Witt-type Lie algebras in PBW normal form.
//!
//! A [`Uea`] fixes a Lie algebra, a coefficient ring and a mode: the full
//! enveloping algebra, or (for `W(n;1)`) the restricted quotient where every
//! `p`-th power of a basis symbol is replaced by its `p`-map image. Elements
//! are sparse maps from ordered monomials to coefficients. Products are
//! computed by moving one generator at a time into place, with results cached
//! per algebra.

mod hopf;
mod map;
mod monomial;
mod rewrite;
mod sample;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use dashmap::DashMap;

use crate::liealg::{BasisDeriv, LieAlgebra, LieElement, LieError};
use crate::ring::{Ring, RingError};

pub use hopf::FactorialKind;
pub use map::{map_element, map_tensor, GenImage};
pub use monomial::Monomial;
pub use rewrite::{pbw_normalize, Strategy};
pub use sample::{random_element, random_word};
pub use tensor::{Tensor, TensorKey};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UeaError {
    #[error("operands live in different enveloping algebras")]
    Mismatch,
    #[error("restricted mode needs W(n;1) over a ring of characteristic {0}")]
    RestrictedNeedsJw(u64),
    #[error("{0} is not a basis symbol of the algebra")]
    NotInAlgebra(String),
    #[error("exponent {exp} of {symbol} is not below p = {p} in restricted mode")]
    ExponentTooLarge { symbol: String, exp: u32, p: u64 },
    #[error("divided ad-power of order {l} needs 1/{l}!, which does not exist in characteristic {p}")]
    DividedPower { l: u64, p: u64 },
    #[error("tensor arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Free,
    Restricted,
}

/// Coefficient-weighted list of normal monomials.
pub type Terms<R> = Vec<(Monomial, <R as Ring>::Elem)>;

type Cache<K, R> = DashMap<K, Arc<Terms<R>>>;

pub struct Uea<R: Ring> {
    lie: LieAlgebra,
    ring: R,
    mode: Mode,
    gen_cache: Cache<(Monomial, BasisDeriv), R>,
    mono_cache: Cache<(Monomial, Monomial), R>,
    antipode_cache: Cache<Monomial, R>,
}

impl<R: Ring> fmt::Debug for Uea<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea")
            .field("lie", &self.lie)
            .field("ring", &self.ring.descriptor())
            .field("mode", &self.mode)
            .finish()
    }
}

impl<R: Ring> Uea<R> {
    pub fn new(lie: LieAlgebra, ring: R, mode: Mode) -> Result<Arc<Self>, UeaError> {
        if mode == Mode::Restricted {
            match lie.p() {
                Some(p) if ring.characteristic() == p => {}
                _ => return Err(UeaError::RestrictedNeedsJw(ring.characteristic())),
            }
        }
        Ok(Arc::new(Uea {
            lie,
            ring,
            mode,
            gen_cache: DashMap::new(),
            mono_cache: DashMap::new(),
            antipode_cache: DashMap::new(),
        }))
    }

    pub fn free(lie: LieAlgebra, ring: R) -> Result<Arc<Self>, UeaError> {
        Self::new(lie, ring, Mode::Free)
    }

    pub fn restricted(lie: LieAlgebra, ring: R) -> Result<Arc<Self>, UeaError> {
        Self::new(lie, ring, Mode::Restricted)
    }

    pub fn lie(&self) -> LieAlgebra {
        self.lie
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Whether two contexts describe the same algebra.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.lie == other.lie && self.mode == other.mode && self.ring == other.ring)
    }

    fn restricted_p(&self) -> Option<u64> {
        match self.mode {
            Mode::Restricted => self.lie.p(),
            Mode::Free => None,
        }
    }

    pub fn zero(self: &Arc<Self>) -> Element<R> {
        Element {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Element<R> {
        self.scalar(self.ring.one())
    }

    pub fn scalar(self: &Arc<Self>, c: R::Elem) -> Element<R> {
        let mut out = self.zero();
        out.add_term(Monomial::one(), &c);
        out
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Element<R> {
        self.scalar(self.ring.from_int(n))
    }

    /// `t^k` times the unit.
    pub fn t_pow(self: &Arc<Self>, k: usize) -> Result<Element<R>, UeaError> {
        Ok(self.scalar(self.ring.t_pow(k)?))
    }

    fn check_gen(&self, b: BasisDeriv) -> Result<(), UeaError> {
        if self.lie.contains(b) {
            Ok(())
        } else {
            Err(UeaError::NotInAlgebra(b.to_string()))
        }
    }

    pub fn gen(self: &Arc<Self>, b: BasisDeriv) -> Result<Element<R>, UeaError> {
        self.check_gen(b)?;
        Ok(self.monomial_unchecked(Monomial::gen(b)))
    }

    /// `x^alpha D_i` as an element.
    pub fn basis(self: &Arc<Self>, alpha: &[i64], i: usize) -> Result<Element<R>, UeaError> {
        self.gen(self.lie.basis(alpha, i)?)
    }

    /// A normal monomial, validated against the mode.
    pub fn monomial(self: &Arc<Self>, m: &Monomial) -> Result<Element<R>, UeaError> {
        for &(b, k) in m.factors() {
            self.check_gen(b)?;
            if let Some(p) = self.restricted_p() {
                if u64::from(k) >= p {
                    return Err(UeaError::ExponentTooLarge {
                        symbol: b.to_string(),
                        exp: k,
                        p,
                    });
                }
            }
        }
        Ok(self.monomial_unchecked(m.clone()))
    }

    fn monomial_unchecked(self: &Arc<Self>, m: Monomial) -> Element<R> {
        let mut out = self.zero();
        out.terms.insert(m, self.ring.one());
        out
    }

    /// Image of a Lie element under the canonical embedding.
    pub fn from_lie(self: &Arc<Self>, x: &LieElement<R>) -> Result<Element<R>, UeaError> {
        if x.alg != self.lie || x.ring != self.ring {
            return Err(UeaError::Mismatch);
        }
        let mut out = self.zero();
        for (b, c) in &x.terms {
            out.add_term(Monomial::gen(*b), c);
        }
        Ok(out)
    }

    /// The product of a word of generators, in the given order.
    pub fn word(self: &Arc<Self>, word: &[BasisDeriv]) -> Result<Element<R>, UeaError> {
        let mut acc = self.one();
        for &g in word {
            self.check_gen(g)?;
            acc = acc.mul_gen(g);
        }
        Ok(acc)
    }

    /// Normal form of `m * g` for a normal monomial `m` and a generator `g`.
    pub(crate) fn mono_times_gen(&self, m: &Monomial, g: BasisDeriv) -> Arc<Terms<R>> {
        let key = (m.clone(), g);
        if let Some(hit) = self.gen_cache.get(&key) {
            return hit.clone();
        }
        let result = Arc::new(self.compute_mono_times_gen(m, g));
        self.gen_cache.insert(key, result.clone());
        result
    }

    fn compute_mono_times_gen(&self, m: &Monomial, g: BasisDeriv) -> Terms<R> {
        let one = self.ring.one();
        let Some((z, k)) = m.last() else {
            return vec![(Monomial::gen(g), one)];
        };
        if g > z {
            return vec![(m.push(g), one)];
        }
        if g == z {
            if let Some(p) = self.restricted_p() {
                if u64::from(k) + 1 == p {
                    let rest = m.pop_factor();
                    return match self.lie.p_power_basis(z) {
                        Some(image) => (*self.mono_times_gen(&rest, image)).clone(),
                        None => Vec::new(),
                    };
                }
            }
            return vec![(m.push(g), one)];
        }
        // m = m' z with g < z: m g = (m' g) z + m' [z, g].
        let head = m.pop_one();
        let mut acc = Accumulator::new(&self.ring);
        for (u, c) in self.mono_times_gen(&head, g).iter() {
            for (v, d) in self.mono_times_gen(u, z).iter() {
                acc.add(v, &self.ring.mul(c, d));
            }
        }
        for (b, s) in self.lie.bracket(z, g) {
            let s = self.ring.from_int(s);
            for (v, d) in self.mono_times_gen(&head, b).iter() {
                acc.add(v, &self.ring.mul(&s, d));
            }
        }
        acc.finish()
    }

    /// Normal form of the product of two normal monomials.
    pub(crate) fn mono_times_mono(&self, a: &Monomial, b: &Monomial) -> Arc<Terms<R>> {
        if b.is_one() {
            return Arc::new(vec![(a.clone(), self.ring.one())]);
        }
        if a.is_one() {
            return Arc::new(vec![(b.clone(), self.ring.one())]);
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.mono_cache.get(&key) {
            return hit.clone();
        }
        let mut current: Terms<R> = vec![(a.clone(), self.ring.one())];
        for g in b.word() {
            let mut acc = Accumulator::new(&self.ring);
            for (u, c) in &current {
                for (v, d) in self.mono_times_gen(u, g).iter() {
                    acc.add(v, &self.ring.mul(c, d));
                }
            }
            current = acc.finish();
        }
        let result = Arc::new(current);
        self.mono_cache.insert(key, result.clone());
        result
    }

    /// Normal monomials of the restricted algebra: every exponent below `p`.
    pub fn restricted_basis(&self) -> Result<Vec<Monomial>, UeaError> {
        let p = self
            .lie
            .p()
            .ok_or(UeaError::RestrictedNeedsJw(self.ring.characteristic()))?;
        let gens = self.lie.jw_basis();
        let mut out = vec![Vec::new()];
        for g in gens {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for prefix in &out {
                for k in 0..p as u32 {
                    let mut v: Vec<(BasisDeriv, u32)> = Vec::clone(prefix);
                    if k > 0 {
                        v.push((g, k));
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        let mut monos: Vec<Monomial> = out.iter().map(|f| Monomial::from_sorted(f)).collect();
        monos.sort();
        Ok(monos)
    }
}

/// Sums coefficient-weighted monomials, dropping zeros.
pub(crate) struct Accumulator<'a, R: Ring> {
    ring: &'a R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<'a, R: Ring> Accumulator<'a, R> {
    pub(crate) fn new(ring: &'a R) -> Self {
        Accumulator {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, m: &Monomial, c: &R::Elem) {
        add_into(self.ring, &mut self.terms, m, c);
    }

    pub(crate) fn finish(self) -> Terms<R> {
        self.terms.into_iter().collect()
    }
}

pub(crate) fn add_into<K: Ord + Clone, R: Ring>(
    ring: &R,
    terms: &mut BTreeMap<K, R::Elem>,
    key: &K,
    c: &R::Elem,
) {
    if ring.is_zero(c) {
        return;
    }
    match terms.get_mut(key) {
        Some(slot) => {
            ring.add_assign(slot, c);
            if ring.is_zero(slot) {
                terms.remove(key);
            }
        }
        None => {
            terms.insert(key.clone(), c.clone());
        }
    }
}

/// An element of an enveloping algebra.
#[derive(Clone)]
pub struct Element<R: Ring> {
    alg: Arc<Uea<R>>,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> Element<R> {
    pub fn algebra(&self) -> &Arc<Uea<R>> {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        &self.alg.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.alg.ring.zero())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &R::Elem) {
        add_into(&self.alg.ring, &mut self.terms, &m, c);
    }

    fn check(&self, other: &Self) -> Result<(), UeaError> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(UeaError::Mismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, UeaError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&self.alg.ring, &mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, UeaError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, UeaError> {
        self.check(other)?;
        let ring = &self.alg.ring;
        let mut out = self.alg.zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = ring.mul(x, y);
                if ring.is_zero(&xy) {
                    continue;
                }
                for (m, c) in self.alg.mono_times_mono(a, b).iter() {
                    add_into(ring, &mut out.terms, m, &ring.mul(&xy, c));
                }
            }
        }
        Ok(out)
    }

    /// `x y - y x`.
    pub fn try_commutator(&self, other: &Self) -> Result<Self, UeaError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub(crate) fn mul_gen(&self, g: BasisDeriv) -> Self {
        let ring = &self.alg.ring;
        let mut out = self.alg.zero();
        for (a, x) in &self.terms {
            for (m, c) in self.alg.mono_times_gen(a, g).iter() {
                add_into(ring, &mut out.terms, m, &ring.mul(x, c));
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = &self.alg.ring;
        let mut out = self.alg.zero();
        for (m, x) in &self.terms {
            add_into(ring, &mut out.terms, m, &ring.mul(x, c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.alg.ring.from_int(n))
    }

    fn neg_ref(&self) -> Self {
        let ring = &self.alg.ring;
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest total degree among the monomials, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }
}

impl<R: Ring> PartialEq for Element<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::cli::grammar::format_element(self))
    }
}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::cli::grammar::format_element(self))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<R: Ring> $trait<&Element<R>> for &Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: &Element<R>) -> Element<R> {
                self.$try(rhs).expect("elements of different algebras")
            }
        }

        impl<R: Ring> $trait<Element<R>> for Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: Element<R>) -> Element<R> {
                (&self).$try(&rhs).expect("elements of different algebras")
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);

impl<R: Ring> Neg for &Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        self.neg_ref()
    }
}

impl<R: Ring> Neg for Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests;
