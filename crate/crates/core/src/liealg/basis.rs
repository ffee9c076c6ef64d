use std::fmt;

use smallvec::SmallVec;

use super::LieError;

/// Most variables a basis symbol can carry.
pub const MAX_VARS: usize = 7;
/// Largest absolute exponent component.
pub const MAX_EXP: i64 = 127;

pub type Exps = SmallVec<[i64; MAX_VARS]>;

/// A basis derivation `x^alpha D_i`, packed into one word.
///
/// The seven high bytes hold the components of `alpha` (offset by 128, first
/// component most significant), the low byte holds `n` in its high nibble and
/// the derivation index in its low nibble. Integer order on the word is
/// therefore lexicographic order on `alpha`, then on the index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisDeriv(u64);

impl BasisDeriv {
    pub fn new(alpha: &[i64], i: usize) -> Result<Self, LieError> {
        let n = alpha.len();
        if n == 0 || n > MAX_VARS {
            return Err(LieError::BadRank(n));
        }
        if i == 0 || i > n {
            return Err(LieError::BadIndex { i, n });
        }
        if let Some(&a) = alpha.iter().find(|a| a.abs() > MAX_EXP) {
            return Err(LieError::ExponentRange(a));
        }
        Ok(Self::pack(alpha, i))
    }

    fn pack(alpha: &[i64], i: usize) -> Self {
        let mut word = 0u64;
        for k in 0..MAX_VARS {
            let a = alpha.get(k).copied().unwrap_or(0);
            word |= ((a + 128) as u64) << (56 - 8 * k);
        }
        word |= ((alpha.len() as u64) << 4) | i as u64;
        BasisDeriv(word)
    }

    pub fn n(&self) -> usize {
        ((self.0 >> 4) & 0xf) as usize
    }

    /// Derivation index, starting at 1.
    pub fn index(&self) -> usize {
        (self.0 & 0xf) as usize
    }

    /// Component `k` of `alpha`, counting from 0.
    pub fn exp(&self, k: usize) -> i64 {
        ((self.0 >> (56 - 8 * k)) & 0xff) as i64 - 128
    }

    pub fn alpha(&self) -> Exps {
        (0..self.n()).map(|k| self.exp(k)).collect()
    }

    /// Same index, exponent shifted by `delta`. `None` if a component leaves
    /// the representable range.
    pub fn shifted(&self, delta: &[i64]) -> Option<Self> {
        let mut a = self.alpha();
        for (x, d) in a.iter_mut().zip(delta) {
            *x += d;
            if x.abs() > MAX_EXP {
                return None;
            }
        }
        Some(Self::pack(&a, self.index()))
    }

    pub fn with_index(&self, i: usize) -> Self {
        debug_assert!(i >= 1 && i <= self.n());
        BasisDeriv((self.0 & !0xf) | i as u64)
    }

    /// Whether this is `x^{e_i} D_i`.
    pub fn is_toral(&self) -> bool {
        let i = self.index() - 1;
        (0..self.n()).all(|k| self.exp(k) == i64::from(k == i))
    }
}

impl fmt::Display for BasisDeriv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x(")?;
        for k in 0..self.n() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.exp(k))?;
        }
        write!(f, ")D{}", self.index())
    }
}

impl fmt::Debug for BasisDeriv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn unit(n: usize, k: usize) -> Exps {
    (0..n).map(|j| i64::from(j == k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roundtrip_fields() {
        let b = BasisDeriv::new(&[3, -1, 0], 2).unwrap();
        assert_eq!(b.n(), 3);
        assert_eq!(b.index(), 2);
        assert_eq!(b.alpha().as_slice(), &[3, -1, 0]);
        assert_eq!(b.to_string(), "x(3,-1,0)D2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BasisDeriv::new(&[1], 2).is_err());
        assert!(BasisDeriv::new(&[], 1).is_err());
        assert!(BasisDeriv::new(&[200], 1).is_err());
        assert!(BasisDeriv::new(&[0; 8], 1).is_err());
    }

    #[test]
    fn toral_elements() {
        assert!(BasisDeriv::new(&[0, 1], 2).unwrap().is_toral());
        assert!(!BasisDeriv::new(&[1, 0], 2).unwrap().is_toral());
        assert!(!BasisDeriv::new(&[2], 1).unwrap().is_toral());
    }

    #[test]
    fn h_precedes_e() {
        let h = BasisDeriv::new(&[1], 1).unwrap();
        let e = BasisDeriv::new(&[2], 1).unwrap();
        assert!(h < e);
    }

    proptest! {
        #[test]
        fn word_order_is_lex_order(
            a in prop::collection::vec(-127i64..=127, 3),
            b in prop::collection::vec(-127i64..=127, 3),
            i in 1usize..=3,
            j in 1usize..=3,
        ) {
            let x = BasisDeriv::new(&a, i).unwrap();
            let y = BasisDeriv::new(&b, j).unwrap();
            prop_assert_eq!(x.cmp(&y), (a, i).cmp(&(b, j)));
        }
    }
}
