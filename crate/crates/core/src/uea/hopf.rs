use std::sync::Arc;

use super::{Element, Monomial, Tensor, TensorKey, Uea, UeaError};
use crate::ring::{binom_int, Ring};

/// Which factorial product to build from a base element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorialKind {
    /// `(x + a)(x + a + 1) ... (x + a + r - 1)`.
    Rising,
    /// `(x + a)(x + a - 1) ... (x + a - r + 1)`.
    Falling,
}

impl<R: Ring> Uea<R> {
    /// The primitive coproduct of a normal monomial:
    /// `sum_j prod_f binom(k_f, j_f) z^j (x) z^{k - j}`.
    pub fn delta0_monomial(self: &Arc<Self>, m: &Monomial) -> Tensor<R> {
        let ring = self.ring();
        let mut out = Tensor::zero(self, 2);
        let factors = m.factors();
        let mut split = vec![0u32; factors.len()];
        loop {
            let mut left = Vec::with_capacity(factors.len());
            let mut right = Vec::with_capacity(factors.len());
            let mut c = num_bigint::BigInt::from(1);
            for (&(b, k), &j) in factors.iter().zip(&split) {
                c *= binom_int(i64::from(k), j);
                if j > 0 {
                    left.push((b, j));
                }
                if k > j {
                    right.push((b, k - j));
                }
            }
            let key: TensorKey = [Monomial::from_sorted(&left), Monomial::from_sorted(&right)]
                .into_iter()
                .collect();
            out.add_term(&key, &ring.from_bigint(&c));
            // Advance the mixed-radix counter over 0..=k_f.
            let mut pos = 0;
            loop {
                if pos == factors.len() {
                    return out;
                }
                if split[pos] < factors[pos].1 {
                    split[pos] += 1;
                    break;
                }
                split[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The standard antipode of a normal monomial: the reversed word, each
    /// letter negated, multiplied back into normal form.
    pub fn antipode0_monomial(self: &Arc<Self>, m: &Monomial) -> Element<R> {
        if let Some(hit) = self.antipode_cache.get(m) {
            let mut out = self.zero();
            for (u, c) in hit.iter() {
                out.add_term(u.clone(), c);
            }
            return out;
        }
        let mut word = m.word();
        word.reverse();
        let mut acc = self.one();
        for g in word {
            acc = acc.mul_gen(g);
        }
        if m.degree() % 2 == 1 {
            acc = -acc;
        }
        self.antipode_cache.insert(
            m.clone(),
            Arc::new(acc.terms().iter().map(|(u, c)| (u.clone(), c.clone())).collect()),
        );
        acc
    }

    pub fn counit0_monomial(&self, m: &Monomial) -> R::Elem {
        if m.is_one() {
            self.ring().one()
        } else {
            self.ring().zero()
        }
    }
}

impl<R: Ring> Element<R> {
    pub fn delta0(&self) -> Tensor<R> {
        let ring = self.ring();
        let mut out = Tensor::zero(self.algebra(), 2);
        for (m, c) in self.terms() {
            for (k, d) in self.algebra().delta0_monomial(m).terms() {
                out.add_term(k, &ring.mul(c, d));
            }
        }
        out
    }

    pub fn antipode0(&self) -> Element<R> {
        let mut out = self.algebra().zero();
        for (m, c) in self.terms() {
            out = &out + &self.algebra().antipode0_monomial(m).scale(c);
        }
        out
    }

    pub fn counit0(&self) -> R::Elem {
        self.constant_term()
    }

    /// Rising or falling factorial `x_a^<r>` / `x_a^[r]`.
    pub fn factorial(&self, a: &R::Elem, r: u64, kind: FactorialKind) -> Element<R> {
        let alg = self.algebra();
        let shifted = self + &alg.scalar(a.clone());
        let step = match kind {
            FactorialKind::Rising => 1,
            FactorialKind::Falling => -1,
        };
        let mut acc = alg.one();
        for j in 0..r as i64 {
            acc = &acc * &(&shifted + &alg.from_int(step * j));
        }
        acc
    }

    /// `(ad e)(x) = e x - x e`.
    pub fn ad(e: &Element<R>, x: &Element<R>) -> Result<Element<R>, UeaError> {
        e.try_commutator(x)
    }

    /// `(1/l!) (ad e)^l (x)`.
    pub fn ad_divided_power(e: &Element<R>, l: u64, x: &Element<R>) -> Result<Element<R>, UeaError> {
        let ring = e.ring();
        let p = ring.characteristic();
        if p != 0 && l >= p {
            return Err(UeaError::DividedPower { l, p });
        }
        let inv = ring.inv_factorial(l)?;
        let mut y = x.clone();
        for _ in 0..l {
            y = Self::ad(e, &y)?;
        }
        Ok(y.scale(&inv))
    }
}

impl<R: Ring> Tensor<R> {
    pub fn delta0_slot(&self, slot: usize) -> Tensor<R> {
        let alg = self.algebra().clone();
        self.split_slot(slot, |m| alg.delta0_monomial(m))
    }

    pub fn antipode0_slot(&self, slot: usize) -> Tensor<R> {
        let alg = self.algebra().clone();
        self.map_slot(slot, |m| alg.antipode0_monomial(m))
    }

    pub fn counit0_slot(&self, slot: usize) -> Tensor<R> {
        let alg = self.algebra().clone();
        self.contract_slot(slot, |m| alg.counit0_monomial(m))
    }
}
