use super::{BasisDeriv, Bracket, Exps, LieAlgebra};
use crate::ring::lucas_binom_mod_p;

/// Dense square matrix over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub p: u64,
    pub dim: usize,
    pub entries: Vec<u64>,
}

impl OpMatrix {
    pub fn zero(p: u64, dim: usize) -> Self {
        OpMatrix {
            p,
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let mut m = Self::zero(p, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.dim {
                    let idx = i * self.dim + j;
                    out.entries[idx] = (out.entries[idx] + a * other.get(k, j)) % self.p;
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, other: &Self, c: u64) -> Self {
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x = (*x + c % self.p * y) % self.p;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).add_scaled(&other.mul(self), self.p - 1)
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.p, self.dim), |acc, _| acc.mul(self))
    }
}

/// The divided power algebra `O(n;1)` with its natural `W(n;1)` action.
#[derive(Debug, Clone)]
pub struct DividedPowerModule {
    alg: LieAlgebra,
    p: u64,
    monomials: Vec<Exps>,
}

impl DividedPowerModule {
    pub fn new(alg: LieAlgebra) -> Self {
        let p = alg.p().expect("divided powers need W(n;1)");
        let n = alg.n();
        let dim = (p as usize).pow(n as u32);
        let monomials = (0..dim)
            .map(|mut code| {
                let mut beta = Exps::new();
                for _ in 0..n {
                    beta.push((code % p as usize) as i64);
                    code /= p as usize;
                }
                beta
            })
            .collect();
        DividedPowerModule { alg, p, monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    fn position(&self, beta: &[i64]) -> Option<usize> {
        let p = self.p as i64;
        let mut idx = 0usize;
        for &b in beta.iter().rev() {
            if b < 0 || b >= p {
                return None;
            }
            idx = idx * p as usize + b as usize;
        }
        Some(idx)
    }

    /// Matrix of `x^(alpha) D_i` acting by `x^(beta) -> binom(alpha + beta - e_i, alpha) x^(alpha + beta - e_i)`.
    pub fn matrix(&self, b: BasisDeriv) -> OpMatrix {
        let alpha = b.alpha();
        let i = b.index() - 1;
        let mut m = OpMatrix::zero(self.p, self.dim());
        for (col, beta) in self.monomials.iter().enumerate() {
            if beta[i] == 0 {
                continue;
            }
            let target: Exps = alpha
                .iter()
                .zip(beta)
                .enumerate()
                .map(|(k, (a, x))| a + x - i64::from(k == i))
                .collect();
            let Some(row) = self.position(&target) else {
                continue;
            };
            let mut c = 1u64;
            for (t, a) in target.iter().zip(&alpha) {
                c = c * lucas_binom_mod_p(*t as u64, *a as u64, self.p) % self.p;
            }
            m.entries[row * self.dim() + col] = c;
        }
        m
    }

    pub fn matrix_of_combination(&self, combo: &Bracket) -> OpMatrix {
        combo.iter().fold(OpMatrix::zero(self.p, self.dim()), |acc, (b, c)| {
            acc.add_scaled(&self.matrix(*b), c.rem_euclid(self.p as i64) as u64)
        })
    }

    pub fn algebra(&self) -> LieAlgebra {
        self.alg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_down_is_nilpotent() {
        let alg = LieAlgebra::jacobson_witt(3, 1).unwrap();
        let o = DividedPowerModule::new(alg);
        let d = o.matrix(BasisDeriv::new(&[0], 1).unwrap());
        assert_eq!(d.pow(3), OpMatrix::zero(3, 3));
        let x2 = o.matrix(BasisDeriv::new(&[2], 1).unwrap());
        assert_eq!(x2.pow(3), OpMatrix::zero(3, 3));
        let h = o.matrix(BasisDeriv::new(&[1], 1).unwrap());
        assert_eq!(h.pow(3), h);
    }

    #[test]
    fn bracket_matches_commutators_small() {
        for (p, n) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let alg = LieAlgebra::jacobson_witt(p, n).unwrap();
            let o = DividedPowerModule::new(alg);
            let basis = alg.jw_basis();
            for &a in &basis {
                for &b in &basis {
                    let lhs = o.matrix_of_combination(&alg.bracket(a, b));
                    let rhs = o.matrix(a).commutator(&o.matrix(b));
                    assert_eq!(lhs, rhs, "p={p} {a} {b}");
                }
            }
        }
    }
}
