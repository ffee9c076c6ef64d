use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::liealg::BasisDeriv;

/// An ordered PBW monomial `z_1^{k_1} ... z_r^{k_r}` with `z_1 < ... < z_r`.
///
/// Monomials compare by total degree first, then factor by factor, so the unit
/// monomial is the least element.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(BasisDeriv, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn gen(b: BasisDeriv) -> Self {
        let mut v = SmallVec::new();
        v.push((b, 1));
        Monomial(v)
    }

    pub fn power(b: BasisDeriv, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut v = SmallVec::new();
        v.push((b, k));
        Monomial(v)
    }

    /// Builds a monomial from factors that are already strictly increasing.
    pub fn from_sorted(factors: &[(BasisDeriv, u32)]) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(factors.iter().copied().filter(|(_, k)| *k > 0).collect())
    }

    pub fn factors(&self) -> &[(BasisDeriv, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn last(&self) -> Option<(BasisDeriv, u32)> {
        self.0.last().copied()
    }

    /// The monomial with its last factor's exponent lowered by one.
    pub(crate) fn pop_one(&self) -> Self {
        let mut v = self.0.clone();
        if let Some(last) = v.last_mut() {
            if last.1 > 1 {
                last.1 -= 1;
            } else {
                v.pop();
            }
        }
        Monomial(v)
    }

    /// The monomial with the whole last factor removed.
    pub(crate) fn pop_factor(&self) -> Self {
        let mut v = self.0.clone();
        v.pop();
        Monomial(v)
    }

    /// Appends `g` as a new largest factor or bumps the last exponent.
    pub(crate) fn push(&self, g: BasisDeriv) -> Self {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(last) if last.0 == g => last.1 += 1,
            Some(last) => {
                debug_assert!(last.0 < g);
                v.push((g, 1));
            }
            None => v.push((g, 1)),
        }
        Monomial(v)
    }

    /// The monomial written as a word of generators.
    pub fn word(&self) -> Vec<BasisDeriv> {
        self.0
            .iter()
            .flat_map(|&(b, k)| std::iter::repeat(b).take(k as usize))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, (b, k)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ".")?;
            }
            write!(f, "{b}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(a: i64) -> BasisDeriv {
        BasisDeriv::new(&[a], 1).unwrap()
    }

    #[test]
    fn order_is_graded() {
        let one = Monomial::one();
        let e = Monomial::gen(b(2));
        let h2 = Monomial::power(b(1), 2);
        assert!(one < e);
        assert!(e < h2);
        assert!(Monomial::gen(b(1)) < e);
    }

    #[test]
    fn push_and_pop() {
        let m = Monomial::gen(b(1)).push(b(1)).push(b(2));
        assert_eq!(m.factors(), &[(b(1), 2), (b(2), 1)]);
        assert_eq!(m.pop_one().factors(), &[(b(1), 2)]);
        assert_eq!(m.pop_factor(), m.pop_one());
        assert_eq!(m.word(), vec![b(1), b(1), b(2)]);
        assert_eq!(m.to_string(), "x(1)D1^2.x(2)D1");
    }
}
