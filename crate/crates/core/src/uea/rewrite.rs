use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{add_into, Element, Mode, Monomial, Uea, UeaError};
use crate::liealg::BasisDeriv;
use crate::ring::Ring;

/// Which rewrite site the naive normalizer picks next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random sites, from a seeded generator.
    Random(u64),
}

enum Site {
    /// `w[i] > w[i+1]`.
    Swap(usize),
    /// `w[i..i+p]` is one symbol repeated `p` times.
    Power(usize),
}

fn sites(word: &[BasisDeriv], p: Option<u64>) -> Vec<Site> {
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(1) {
        if word[i] > word[i + 1] {
            out.push(Site::Swap(i));
        }
    }
    if let Some(p) = p {
        let p = p as usize;
        for i in 0..(word.len() + 1).saturating_sub(p) {
            if word[i..i + p].iter().all(|&g| g == word[i]) {
                out.push(Site::Power(i));
            }
        }
    }
    out
}

fn to_monomial(word: &[BasisDeriv]) -> Monomial {
    let mut factors: Vec<(BasisDeriv, u32)> = Vec::new();
    for &g in word {
        match factors.last_mut() {
            Some(last) if last.0 == g => last.1 += 1,
            _ => factors.push((g, 1)),
        }
    }
    Monomial::from_sorted(&factors)
}

/// Normal form of a word by adjacent rewriting `y x -> x y + [y, x]` and, in
/// restricted mode, `z^p -> z^[p]`, applied one site at a time until no site
/// remains. Independent of the cached multiplication in [`Uea`].
pub fn pbw_normalize<R: Ring>(
    alg: &Arc<Uea<R>>,
    word: &[BasisDeriv],
    strategy: Strategy,
) -> Result<Element<R>, UeaError> {
    for &g in word {
        if !alg.lie().contains(g) {
            return Err(UeaError::NotInAlgebra(g.to_string()));
        }
    }
    let ring = alg.ring();
    let lie = alg.lie();
    let p = match alg.mode() {
        Mode::Restricted => lie.p(),
        Mode::Free => None,
    };
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Vec<BasisDeriv>, R::Elem> = BTreeMap::new();
    pending.insert(word.to_vec(), ring.one());
    let mut out = alg.zero();
    loop {
        let key = match &mut rng {
            Some(rng) if pending.len() > 1 => {
                let idx = rng.gen_range(0..pending.len());
                pending.keys().nth(idx).cloned()
            }
            _ => pending.keys().next().cloned(),
        };
        let Some(w) = key else { break };
        let c = pending.remove(&w).expect("present");
        let found = sites(&w, p);
        let site = match strategy {
            _ if found.is_empty() => {
                out.add_term(to_monomial(&w), &c);
                continue;
            }
            Strategy::Leftmost => &found[0],
            Strategy::Rightmost => &found[found.len() - 1],
            Strategy::Random(_) => {
                let rng = rng.as_mut().expect("seeded");
                &found[rng.gen_range(0..found.len())]
            }
        };
        match *site {
            Site::Swap(i) => {
                let (y, x) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                add_into(ring, &mut pending, &swapped, &c);
                for (b, s) in lie.bracket(y, x) {
                    let mut v = w[..i].to_vec();
                    v.push(b);
                    v.extend_from_slice(&w[i + 2..]);
                    add_into(ring, &mut pending, &v, &ring.mul_int(&c, s));
                }
            }
            Site::Power(i) => {
                let p = p.expect("restricted") as usize;
                if let Some(image) = lie.p_power_basis(w[i]) {
                    let mut v = w[..i].to_vec();
                    v.push(image);
                    v.extend_from_slice(&w[i + p..]);
                    add_into(ring, &mut pending, &v, &c);
                }
            }
        }
    }
    Ok(out)
}
