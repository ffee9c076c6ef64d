//! Witt-type Lie algebras: the generalized Witt algebra over the rationals,
//! its positive part, and the Jacobson-Witt algebra `W(n;1)` in
//! characteristic `p`.
//!
//! Structure constants are integers in every flavor, so brackets are returned
//! as small integer combinations of basis symbols and lifted into a coefficient
//! ring by the caller.

mod basis;
mod element;
mod oracle;

use serde::Serialize;
use smallvec::SmallVec;

use crate::ring::{is_prime, lucas_binom_mod_p};

pub use basis::{BasisDeriv, Exps, MAX_EXP, MAX_VARS};
pub(crate) use basis::unit;
pub use element::{pairing, reduce_wplus_to_jw, witt_field, LieElement, RMatrixData, TVector};
pub use oracle::{DividedPowerModule, OpMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("rank {0} is outside 1..=7")]
    BadRank(usize),
    #[error("derivation index {i} is outside 1..={n}")]
    BadIndex { i: usize, n: usize },
    #[error("exponent component {0} is out of range")]
    ExponentRange(i64),
    #[error("exponent {alpha:?} is not allowed in {flavor}")]
    FlavorBounds { alpha: Vec<i64>, flavor: String },
    #[error("modulus {0} is not a prime >= 3")]
    BadModulus(u64),
    #[error("length mismatch: {0} vs {1}")]
    Length(usize, usize),
    #[error("pairing <d0, gamma> must be a nonzero integer")]
    DegeneratePairing,
    #[error("coefficient {0} does not reduce modulo {1}")]
    NotReducible(String, u64),
    #[error("flavor mismatch: {0} vs {1}")]
    FlavorMismatch(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flavor {
    /// `x^alpha d_i` with `alpha` in `Z^n`, `d_i` the degree derivations.
    Witt,
    /// `x^alpha D_i` with `alpha >= 0`, `D_i` the partial derivatives.
    WittPlus,
    /// `x^(alpha) D_i` with `0 <= alpha <= p-1` componentwise.
    JacobsonWitt { p: u64 },
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::Witt => write!(f, "W"),
            Flavor::WittPlus => write!(f, "W+"),
            Flavor::JacobsonWitt { p } => write!(f, "W(n;1) mod {p}"),
        }
    }
}

/// Integer combination of basis symbols.
pub type Bracket = SmallVec<[(BasisDeriv, i64); 2]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    flavor: Flavor,
    n: usize,
}

impl LieAlgebra {
    pub fn new(flavor: Flavor, n: usize) -> Result<Self, LieError> {
        if n == 0 || n > MAX_VARS {
            return Err(LieError::BadRank(n));
        }
        if let Flavor::JacobsonWitt { p } = flavor {
            if p < 3 || !is_prime(p) || p > MAX_EXP as u64 {
                return Err(LieError::BadModulus(p));
            }
        }
        Ok(LieAlgebra { flavor, n })
    }

    pub fn witt(n: usize) -> Result<Self, LieError> {
        Self::new(Flavor::Witt, n)
    }

    pub fn wplus(n: usize) -> Result<Self, LieError> {
        Self::new(Flavor::WittPlus, n)
    }

    pub fn jacobson_witt(p: u64, n: usize) -> Result<Self, LieError> {
        Self::new(Flavor::JacobsonWitt { p }, n)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The prime for `W(n;1)`, else `None`.
    pub fn p(&self) -> Option<u64> {
        match self.flavor {
            Flavor::JacobsonWitt { p } => Some(p),
            _ => None,
        }
    }

    fn in_range(&self, alpha: &[i64]) -> bool {
        match self.flavor {
            Flavor::Witt => true,
            Flavor::WittPlus => alpha.iter().all(|&a| a >= 0),
            Flavor::JacobsonWitt { p } => alpha.iter().all(|&a| a >= 0 && a < p as i64),
        }
    }

    /// Validated basis symbol of this algebra.
    pub fn basis(&self, alpha: &[i64], i: usize) -> Result<BasisDeriv, LieError> {
        if alpha.len() != self.n {
            return Err(LieError::Length(alpha.len(), self.n));
        }
        if !self.in_range(alpha) {
            return Err(LieError::FlavorBounds {
                alpha: alpha.to_vec(),
                flavor: self.flavor.to_string(),
            });
        }
        BasisDeriv::new(alpha, i)
    }

    pub fn contains(&self, b: BasisDeriv) -> bool {
        b.n() == self.n && self.in_range(&b.alpha())
    }

    /// `alpha` shifted by `delta`, or `None` when the result leaves the algebra.
    fn shift(&self, b: BasisDeriv, delta: &[i64], i: usize) -> Option<BasisDeriv> {
        let s = b.shifted(delta)?.with_index(i);
        self.in_range(&s.alpha()).then_some(s)
    }

    pub fn bracket(&self, a: BasisDeriv, b: BasisDeriv) -> Bracket {
        debug_assert!(self.contains(a) && self.contains(b));
        let (i, j) = (a.index(), b.index());
        let alpha = a.alpha();
        let beta = b.alpha();
        let sum: Exps = alpha.iter().zip(&beta).map(|(x, y)| x + y).collect();
        let mut out = Bracket::new();
        let mut push = |basis: Option<BasisDeriv>, c: i64| {
            if let Some(basis) = basis {
                if c != 0 {
                    if let Some(slot) = out.iter_mut().find(|(x, _)| *x == basis) {
                        slot.1 += c;
                    } else {
                        out.push((basis, c));
                    }
                }
            }
        };
        match self.flavor {
            Flavor::Witt => {
                let base = a
                    .shifted(&beta)
                    .expect("bracket exponent out of representable range");
                push(Some(base.with_index(j)), beta[i - 1]);
                push(Some(base.with_index(i)), -alpha[j - 1]);
            }
            Flavor::WittPlus => {
                let ei = unit(self.n, i - 1);
                let ej = unit(self.n, j - 1);
                let di: Exps = beta.iter().zip(&ei).map(|(x, y)| x - y).collect();
                let dj: Exps = beta.iter().zip(&ej).map(|(x, y)| x - y).collect();
                push(self.shift(a, &di, j), beta[i - 1]);
                push(self.shift(a, &dj, i), -alpha[j - 1]);
            }
            Flavor::JacobsonWitt { p } => {
                let ei = unit(self.n, i - 1);
                let ej = unit(self.n, j - 1);
                let top_i: Exps = sum.iter().zip(&ei).map(|(x, y)| x - y).collect();
                let top_j: Exps = sum.iter().zip(&ej).map(|(x, y)| x - y).collect();
                let di: Exps = beta.iter().zip(&ei).map(|(x, y)| x - y).collect();
                let dj: Exps = beta.iter().zip(&ej).map(|(x, y)| x - y).collect();
                // x^(a) D_i (x^(b)) = binom(a + b - e_i, a) x^(a + b - e_i)
                if let Some(t) = self.shift(a, &di, j) {
                    push(Some(t), binom_multi(&top_i, &alpha, p) as i64);
                }
                if let Some(t) = self.shift(a, &dj, i) {
                    let c = binom_multi(&top_j, &beta, p) as i64;
                    push(Some(t), (p as i64 - c) % p as i64);
                }
                for slot in out.iter_mut() {
                    slot.1 = slot.1.rem_euclid(p as i64);
                }
            }
        }
        out.retain(|(_, c)| *c != 0);
        out.sort_unstable_by_key(|(b, _)| *b);
        out
    }

    /// The restricted `p`-map on a basis symbol: `H_i` is fixed, the others go to 0.
    pub fn p_power_basis(&self, a: BasisDeriv) -> Option<BasisDeriv> {
        a.is_toral().then_some(a)
    }

    /// Every basis symbol of `W(n;1)`, in canonical order.
    pub fn jw_basis(&self) -> Vec<BasisDeriv> {
        let p = self.p().expect("finite basis only for W(n;1)") as i64;
        let mut out = Vec::new();
        let total = (p as usize).pow(self.n as u32);
        for code in 0..total {
            let mut alpha = Exps::new();
            let mut rest = code;
            for _ in 0..self.n {
                alpha.push((rest % p as usize) as i64);
                rest /= p as usize;
            }
            alpha.reverse();
            for i in 1..=self.n {
                out.push(BasisDeriv::new(&alpha, i).expect("in range"));
            }
        }
        out.sort_unstable();
        out
    }

    /// The distinguished pair of direction `k` (1-based): `h` and `e` with
    /// `[h, e] = e`, `e` returned as a scaled basis symbol.
    pub fn basic_pair(&self, k: usize) -> (BasisDeriv, (BasisDeriv, i64)) {
        assert!(k >= 1 && k <= self.n, "direction {k} outside 1..={}", self.n);
        let ek = unit(self.n, k - 1);
        let twice: Exps = ek.iter().map(|x| 2 * x).collect();
        let zero: Exps = (0..self.n).map(|_| 0).collect();
        match self.flavor {
            Flavor::Witt => (
                BasisDeriv::new(&zero, k).unwrap(),
                (BasisDeriv::new(&ek, k).unwrap(), 1),
            ),
            Flavor::WittPlus => (
                BasisDeriv::new(&ek, k).unwrap(),
                (BasisDeriv::new(&twice, k).unwrap(), 1),
            ),
            Flavor::JacobsonWitt { .. } => (
                BasisDeriv::new(&ek, k).unwrap(),
                (BasisDeriv::new(&twice, k).unwrap(), 2),
            ),
        }
    }
}

fn binom_multi(top: &[i64], bottom: &[i64], p: u64) -> u64 {
    let mut acc = 1u64;
    for (&t, &b) in top.iter().zip(bottom) {
        if t < 0 || b < 0 || b > t {
            return 0;
        }
        acc = acc * lucas_binom_mod_p(t as u64, b as u64, p) % p;
    }
    acc
}
