use std::sync::Arc;

use rand::seq::SliceRandom;

use super::{Element, Uea};
use crate::liealg::BasisDeriv;
use crate::ring::Ring;

/// A word of between 0 and `max_len` letters drawn from `gens`.
pub fn random_word(rng: &mut impl rand::Rng, gens: &[BasisDeriv], max_len: usize) -> Vec<BasisDeriv> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| *gens.choose(rng).expect("nonempty generator list"))
        .collect()
}

/// A sum of up to `max_terms` words with small integer coefficients.
pub fn random_element<R: Ring>(
    alg: &Arc<Uea<R>>,
    rng: &mut impl rand::Rng,
    gens: &[BasisDeriv],
    max_terms: usize,
    max_len: usize,
) -> Element<R> {
    let mut out = alg.zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let w = random_word(rng, gens, max_len);
        let c = rng.gen_range(-3i64..=3);
        out = &out + &alg.word(&w).expect("generators belong to the algebra").scale_int(c);
    }
    out
}
