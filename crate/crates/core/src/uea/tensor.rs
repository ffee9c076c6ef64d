use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::{add_into, Element, Monomial, Uea, UeaError};
use crate::ring::Ring;

/// One monomial per tensor slot.
pub type TensorKey = SmallVec<[Monomial; 3]>;

/// An element of a tensor power `U^{(x) k}` of one enveloping algebra.
#[derive(Clone)]
pub struct Tensor<R: Ring> {
    alg: Arc<Uea<R>>,
    arity: usize,
    terms: BTreeMap<TensorKey, R::Elem>,
}

impl<R: Ring> Tensor<R> {
    pub fn zero(alg: &Arc<Uea<R>>, arity: usize) -> Self {
        Tensor {
            alg: alg.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<Uea<R>>, arity: usize) -> Self {
        let mut out = Self::zero(alg, arity);
        let key: TensorKey = (0..arity).map(|_| Monomial::one()).collect();
        out.terms.insert(key, alg.ring().one());
        out
    }

    /// `a_1 (x) ... (x) a_k`.
    pub fn pure(parts: &[&Element<R>]) -> Result<Self, UeaError> {
        let first = parts.first().ok_or(UeaError::Arity(0, 1))?;
        let alg = first.algebra().clone();
        let ring = alg.ring().clone();
        let mut keys: Vec<(TensorKey, R::Elem)> = vec![(TensorKey::new(), ring.one())];
        for part in parts {
            if !part.algebra().same_as(&alg) {
                return Err(UeaError::Mismatch);
            }
            let mut next = Vec::with_capacity(keys.len() * part.terms().len());
            for (k, c) in &keys {
                for (m, d) in part.terms() {
                    let cd = ring.mul(c, d);
                    if ring.is_zero(&cd) {
                        continue;
                    }
                    let mut k2 = k.clone();
                    k2.push(m.clone());
                    next.push((k2, cd));
                }
            }
            keys = next;
        }
        let mut out = Self::zero(&alg, parts.len());
        for (k, c) in keys {
            add_into(&ring, &mut out.terms, &k, &c);
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<Uea<R>> {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: &TensorKey, c: &R::Elem) {
        debug_assert_eq!(key.len(), self.arity);
        add_into(self.alg.ring(), &mut self.terms, key, c);
    }

    fn check(&self, other: &Self) -> Result<(), UeaError> {
        if !self.alg.same_as(&other.alg) {
            return Err(UeaError::Mismatch);
        }
        if self.arity != other.arity {
            return Err(UeaError::Arity(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, UeaError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, UeaError> {
        self.try_add(&other.scale(&self.alg.ring().from_int(-1)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity);
        for (k, x) in &self.terms {
            out.add_term(k, &ring.mul(x, c));
        }
        out
    }

    /// Slotwise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, UeaError> {
        self.check(other)?;
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity);
        for (ka, x) in &self.terms {
            for (kb, y) in &other.terms {
                let xy = ring.mul(x, y);
                if ring.is_zero(&xy) {
                    continue;
                }
                let slots: Vec<_> = ka
                    .iter()
                    .zip(kb)
                    .map(|(a, b)| self.alg.mono_times_mono(a, b))
                    .collect();
                expand_product(ring, &slots, &xy, &mut |key, c| out.add_term(key, c));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.alg, self.arity);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same tensor power");
        }
        acc
    }

    /// `X (x) Y`, concatenating slots.
    pub fn otimes(&self, other: &Self) -> Result<Self, UeaError> {
        if !self.alg.same_as(&other.alg) {
            return Err(UeaError::Mismatch);
        }
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity + other.arity);
        for (ka, x) in &self.terms {
            for (kb, y) in &other.terms {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                out.add_term(&key, &ring.mul(x, y));
            }
        }
        Ok(out)
    }

    /// Applies a linear map `U -> U` to one slot.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Monomial) -> Element<R>) -> Self {
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity);
        let mut memo: BTreeMap<Monomial, Element<R>> = BTreeMap::new();
        for (k, x) in &self.terms {
            let image = memo.entry(k[slot].clone()).or_insert_with(|| f(&k[slot]));
            for (m, c) in image.terms() {
                let mut key = k.clone();
                key[slot] = m.clone();
                out.add_term(&key, &ring.mul(x, c));
            }
        }
        out
    }

    /// Applies a linear map `U -> U (x) U` to one slot, raising the arity.
    pub fn split_slot(&self, slot: usize, f: impl Fn(&Monomial) -> Tensor<R>) -> Self {
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity + 1);
        let mut memo: BTreeMap<Monomial, Tensor<R>> = BTreeMap::new();
        for (k, x) in &self.terms {
            let image = memo.entry(k[slot].clone()).or_insert_with(|| f(&k[slot]));
            for (pair, c) in image.terms() {
                let mut key = TensorKey::new();
                key.extend(k[..slot].iter().cloned());
                key.extend(pair.iter().cloned());
                key.extend(k[slot + 1..].iter().cloned());
                out.add_term(&key, &ring.mul(x, c));
            }
        }
        out
    }

    /// Applies a linear functional to one slot, lowering the arity.
    pub fn contract_slot(&self, slot: usize, f: impl Fn(&Monomial) -> R::Elem) -> Self {
        let ring = self.alg.ring();
        let mut out = Self::zero(&self.alg, self.arity - 1);
        for (k, x) in &self.terms {
            let c = f(&k[slot]);
            let mut key = k.clone();
            key.remove(slot);
            out.add_term(&key, &ring.mul(x, &c));
        }
        out
    }

    /// Multiplies the slots together in order.
    pub fn multiply(&self) -> Element<R> {
        let mut out = self.alg.zero();
        for (k, x) in &self.terms {
            let mut acc = self.alg.scalar(x.clone());
            for m in k {
                acc = &acc * &self.alg.monomial_unchecked(m.clone());
            }
            out = &out + &acc;
        }
        out
    }

    /// Reads an arity-1 tensor as an element.
    pub fn into_element(self) -> Result<Element<R>, UeaError> {
        if self.arity != 1 {
            return Err(UeaError::Arity(self.arity, 1));
        }
        let mut out = self.alg.zero();
        for (k, c) in self.terms {
            out.add_term(k[0].clone(), &c);
        }
        Ok(out)
    }

    pub fn from_element(x: &Element<R>) -> Self {
        let mut out = Self::zero(x.algebra(), 1);
        for (m, c) in x.terms() {
            out.terms.insert(std::iter::once(m.clone()).collect(), c.clone());
        }
        out
    }

    /// Swaps two slots.
    pub fn permute(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(&self.alg, self.arity);
        for (k, x) in &self.terms {
            let mut key = k.clone();
            key.swap(a, b);
            out.add_term(&key, x);
        }
        out
    }
}

fn expand_product<R: Ring>(
    ring: &R,
    slots: &[Arc<Vec<(Monomial, R::Elem)>>],
    scale: &R::Elem,
    sink: &mut impl FnMut(&TensorKey, &R::Elem),
) {
    fn go<R: Ring>(
        ring: &R,
        slots: &[Arc<Vec<(Monomial, R::Elem)>>],
        key: &mut TensorKey,
        c: &R::Elem,
        sink: &mut impl FnMut(&TensorKey, &R::Elem),
    ) {
        let depth = key.len();
        if depth == slots.len() {
            sink(key, c);
            return;
        }
        for (m, d) in slots[depth].iter() {
            let cd = ring.mul(c, d);
            if ring.is_zero(&cd) {
                continue;
            }
            key.push(m.clone());
            go(ring, slots, key, &cd, sink);
            key.pop();
        }
    }
    let mut key = TensorKey::new();
    go(ring, slots, &mut key, scale, sink);
}

impl<R: Ring> PartialEq for Tensor<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.arity == other.arity && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for Tensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::cli::grammar::format_tensor(self))
    }
}

impl<R: Ring> fmt::Display for Tensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::cli::grammar::format_tensor(self))
    }
}

impl<R: Ring> std::ops::Add<&Tensor<R>> for &Tensor<R> {
    type Output = Tensor<R>;
    fn add(self, rhs: &Tensor<R>) -> Tensor<R> {
        self.try_add(rhs).expect("tensors of different algebras")
    }
}

impl<R: Ring> std::ops::Sub<&Tensor<R>> for &Tensor<R> {
    type Output = Tensor<R>;
    fn sub(self, rhs: &Tensor<R>) -> Tensor<R> {
        self.try_sub(rhs).expect("tensors of different algebras")
    }
}

impl<R: Ring> std::ops::Mul<&Tensor<R>> for &Tensor<R> {
    type Output = Tensor<R>;
    fn mul(self, rhs: &Tensor<R>) -> Tensor<R> {
        self.try_mul(rhs).expect("tensors of different algebras")
    }
}
