use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_twist::cli::grammar::{format_element, format_tensor, parse_element, parse_tensor};
use witt_twist::liealg::{BasisDeriv, LieAlgebra, LieElement};
use witt_twist::ring::{PrimeField, PrimeFieldElem, RationalField, Ring, TPolyRing};
use witt_twist::twist::{Quantized, Setting};
use witt_twist::uea::{random_element, Element, Uea};

type Quot = TPolyRing<PrimeField>;
type QSeries = TPolyRing<RationalField>;

fn restricted(p: u64, n: usize, q: u64) -> Arc<Uea<Quot>> {
    let ring = TPolyRing::quotient(PrimeField::new(p).unwrap(), PrimeFieldElem(q)).unwrap();
    Uea::restricted(LieAlgebra::jacobson_witt(p, n).unwrap(), ring).unwrap()
}

fn wplus(n: usize, cap: usize) -> Arc<Uea<QSeries>> {
    Uea::free(LieAlgebra::wplus(n).unwrap(), TPolyRing::series(RationalField, cap).unwrap()).unwrap()
}

/// A random element with some terms carrying powers of `t`.
fn sample<R: Ring>(alg: &Arc<Uea<R>>, gens: &[BasisDeriv], seed: u64, max_len: usize) -> Element<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_element(alg, &mut rng, gens, 3, max_len);
    let b = random_element(alg, &mut rng, gens, 2, max_len);
    &a + &(&b * &alg.t_pow(1).unwrap())
}

fn wplus_gens(n: usize) -> Vec<BasisDeriv> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..2 {
            for i in 1..=n {
                let alpha: Vec<i64> = [a, b][..n].to_vec();
                out.push(BasisDeriv::new(&alpha, i).unwrap());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn element_text_round_trips(seed in any::<u64>()) {
        let u = restricted(3, 2, 1);
        let gens = u.lie().jw_basis();
        let x = sample(&u, &gens, seed, 3);
        prop_assert_eq!(parse_element(&format_element(&x), &u).unwrap(), x);

        let w = wplus(2, 4);
        let y = sample(&w, &wplus_gens(2), seed, 3);
        prop_assert_eq!(parse_element(&format_element(&y), &w).unwrap(), y);
    }

    #[test]
    fn tensor_text_round_trips(seed in any::<u64>()) {
        let u = restricted(5, 1, 0);
        let qz = Quantized::new(u.clone(), Setting::Modular { eta: vec![1] }).unwrap();
        let x = sample(&u, &u.lie().jw_basis(), seed, 2);
        let d = qz.delta(&x).unwrap();
        prop_assert_eq!(parse_tensor(&format_tensor(&d), &u, 2).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witt_bracket_is_a_lie_bracket(
        a in prop::collection::vec(-3i64..=3, 2),
        b in prop::collection::vec(-3i64..=3, 2),
        c in prop::collection::vec(-3i64..=3, 2),
        i in 1usize..=2, j in 1usize..=2, k in 1usize..=2,
    ) {
        let alg = LieAlgebra::witt(2).unwrap();
        let e = |alpha: &[i64], idx| LieElement::basis(alg, RationalField, BasisDeriv::new(alpha, idx).unwrap());
        let (x, y, z) = (e(&a, i), e(&b, j), e(&c, k));
        prop_assert_eq!(x.bracket(&y), y.bracket(&x).neg());
        let jacobi = x.bracket(&y.bracket(&z))
            .add(&y.bracket(&z.bracket(&x)))
            .add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn twisted_structure_is_hopf_on_random_elements(seed in any::<u64>(), q in 0u64..3) {
        let u = restricted(3, 1, q);
        let qz = Quantized::new(u.clone(), Setting::Modular { eta: vec![1] }).unwrap();
        let x = sample(&u, &u.lie().jw_basis(), seed, 2);
        let d = qz.delta(&x).unwrap();
        prop_assert_eq!(qz.delta_slot(&d, 0).unwrap(), qz.delta_slot(&d, 1).unwrap());
        let unit = u.scalar(qz.counit(&x));
        for slot in [0, 1] {
            prop_assert_eq!(&qz.antipode_slot(&d, slot).unwrap().multiply(), &unit);
            let back = d.contract_slot(slot, |m| u.counit0_monomial(m)).into_element().unwrap();
            prop_assert_eq!(&back, &x);
        }
    }

    #[test]
    fn integral_coproduct_is_multiplicative(seed in any::<u64>()) {
        let w = wplus(1, 4);
        let qz = Quantized::new(w.clone(), Setting::Basic { eta: vec![1] }).unwrap();
        let gens = wplus_gens(1);
        let x = sample(&w, &gens, seed, 1);
        let y = sample(&w, &gens, seed.wrapping_add(1), 1);
        let xy = &x * &y;
        prop_assert_eq!(qz.delta(&xy).unwrap(), &qz.delta(&x).unwrap() * &qz.delta(&y).unwrap());
        prop_assert_eq!(qz.antipode(&xy).unwrap(), &qz.antipode(&y).unwrap() * &qz.antipode(&x).unwrap());
    }
}
