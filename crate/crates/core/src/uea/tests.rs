use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::liealg::LieAlgebra;
use crate::ring::{binom_int, PrimeField, PrimeFieldElem, Rational, RationalField};

fn b(alpha: &[i64], i: usize) -> BasisDeriv {
    BasisDeriv::new(alpha, i).unwrap()
}

fn wplus1() -> Arc<Uea<RationalField>> {
    Uea::free(LieAlgebra::wplus(1).unwrap(), RationalField).unwrap()
}

fn u3() -> Arc<Uea<PrimeField>> {
    Uea::restricted(LieAlgebra::jacobson_witt(3, 1).unwrap(), PrimeField::new(3).unwrap()).unwrap()
}

#[test]
fn normalize_examples() {
    let alg = wplus1();
    let (h, e) = (b(&[1], 1), b(&[2], 1));
    let he = alg.word(&[h, e]).unwrap();
    let expected = &he - &alg.gen(e).unwrap();
    for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(7)] {
        assert_eq!(pbw_normalize(&alg, &[e, h], s).unwrap(), expected);
        assert_eq!(pbw_normalize(&alg, &[h], s).unwrap(), alg.gen(h).unwrap());
    }
    let u = u3();
    let h = b(&[1], 1);
    assert_eq!(
        pbw_normalize(&u, &[h, h, h], Strategy::Leftmost).unwrap(),
        u.gen(h).unwrap()
    );
    assert_eq!(u.gen(h).unwrap().pow(3), u.gen(h).unwrap());
    assert!(u.gen(b(&[2], 1)).unwrap().pow(3).is_zero());
    assert!(u.gen(b(&[0], 1)).unwrap().pow(3).is_zero());
}

#[test]
fn mul_examples() {
    let alg = wplus1();
    let (h, e) = (alg.basis(&[1], 1).unwrap(), alg.basis(&[2], 1).unwrap());
    assert_eq!(&h * &alg.one(), h);
    let he = &h * &e;
    assert_eq!(he.terms().len(), 1);
    assert_eq!(&e * &h, &he - &e);
    let other = Uea::free(LieAlgebra::wplus(2).unwrap(), RationalField).unwrap();
    assert_eq!(h.try_mul(&other.one()), Err(UeaError::Mismatch));
}

#[test]
fn coproduct_examples() {
    let alg = wplus1();
    let h = alg.basis(&[1], 1).unwrap();
    let one = alg.one();
    let pure = |a: &Element<RationalField>, c: &Element<RationalField>| Tensor::pure(&[a, c]).unwrap();
    assert_eq!(h.delta0(), &pure(&h, &one) + &pure(&one, &h));
    let h2 = h.factorial(&Rational::from_integer(0.into()), 2, FactorialKind::Falling);
    let expected = &(&pure(&h2, &one) + &pure(&h, &h).scale(&Rational::from_integer(2.into())))
        + &pure(&one, &h2);
    assert_eq!(h2.delta0(), expected);
    assert_eq!(one.delta0(), Tensor::one(&alg, 2));
}

#[test]
fn antipode_examples() {
    let u = u3();
    for g in u.lie().jw_basis() {
        let x = u.gen(g).unwrap();
        assert_eq!(x.antipode0(), -&x);
        assert_eq!(x.counit0(), PrimeFieldElem(0));
    }
    let alg = wplus1();
    let (h, e) = (alg.basis(&[1], 1).unwrap(), alg.basis(&[2], 1).unwrap());
    assert_eq!((&h * &e).antipode0(), &(&h * &e) - &e);
    assert_eq!(alg.one().antipode0(), alg.one());
    assert_eq!(alg.one().counit0(), Rational::from_integer(1.into()));
}

#[test]
fn factorial_examples() {
    let alg = wplus1();
    let h = alg.basis(&[1], 1).unwrap();
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    assert_eq!(h.factorial(&zero, 2, FactorialKind::Falling), &(&h * &h) - &h);
    assert_eq!(h.factorial(&one, 1, FactorialKind::Rising), &h + &alg.one());
    for kind in [FactorialKind::Rising, FactorialKind::Falling] {
        assert_eq!(h.factorial(&one, 0, kind), alg.one());
    }
}

#[test]
fn divided_ad_power_examples() {
    let u = u3();
    let lie = u.lie();
    let (hb, (eb, ec)) = lie.basic_pair(1);
    let e = u.gen(eb).unwrap().scale_int(ec);
    let h = u.gen(hb).unwrap();
    assert_eq!(Element::ad_divided_power(&e, 0, &h).unwrap(), h);
    assert_eq!(Element::ad_divided_power(&e, 1, &h).unwrap(), -&e);
    assert_eq!(
        Element::ad_divided_power(&e, 3, &h),
        Err(UeaError::DividedPower { l: 3, p: 3 })
    );
}

#[test]
fn tensor_mul_examples() {
    let alg = wplus1();
    let (h, e) = (alg.basis(&[1], 1).unwrap(), alg.basis(&[2], 1).unwrap());
    let one = alg.one();
    let x = Tensor::pure(&[&h, &e]).unwrap();
    assert_eq!(&Tensor::one(&alg, 2) * &x, x);
    let h1 = Tensor::pure(&[&h, &one]).unwrap();
    let e2 = Tensor::pure(&[&one, &e]).unwrap();
    assert_eq!(&h1 * &e2, x);
    assert_eq!(&e2 * &h1, x);
}

#[test]
fn restricted_dimensions() {
    assert_eq!(u3().restricted_basis().unwrap().len(), 27);
    let u5 = Uea::restricted(LieAlgebra::jacobson_witt(5, 1).unwrap(), PrimeField::new(5).unwrap())
        .unwrap();
    assert_eq!(u5.restricted_basis().unwrap().len(), 3125);
}

#[test]
fn restricted_requires_matching_characteristic() {
    let lie = LieAlgebra::jacobson_witt(3, 1).unwrap();
    assert!(Uea::restricted(lie, PrimeField::new(5).unwrap()).is_err());
    assert!(Uea::restricted(LieAlgebra::wplus(1).unwrap(), PrimeField::new(3).unwrap()).is_err());
}

fn confluence<R: Ring>(alg: &Arc<Uea<R>>, gens: &[BasisDeriv], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..200 {
        let w = random_word(&mut rng, gens, 5);
        let cached = alg.word(&w).unwrap();
        for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(round)] {
            assert_eq!(pbw_normalize(alg, &w, s).unwrap(), cached, "{w:?} {s:?}");
        }
    }
}

#[test]
fn rewriting_is_confluent() {
    let w1 = Uea::free(LieAlgebra::witt(1).unwrap(), RationalField).unwrap();
    let gens: Vec<_> = (-1..=2).map(|a| b(&[a], 1)).collect();
    confluence(&w1, &gens, 1);

    let w2 = Uea::free(LieAlgebra::wplus(2).unwrap(), RationalField).unwrap();
    let gens = vec![b(&[0, 0], 1), b(&[1, 0], 2), b(&[0, 1], 1), b(&[2, 0], 1), b(&[1, 1], 2)];
    confluence(&w2, &gens, 2);

    let u = u3();
    confluence(&u, &u.lie().jw_basis(), 3);

    let f3 = Uea::free(LieAlgebra::jacobson_witt(3, 1).unwrap(), PrimeField::new(3).unwrap())
        .unwrap();
    confluence(&f3, &f3.lie().jw_basis(), 4);

    let u32_ = Uea::restricted(LieAlgebra::jacobson_witt(3, 2).unwrap(), PrimeField::new(3).unwrap())
        .unwrap();
    let gens = u32_.lie().jw_basis();
    confluence(&u32_, &gens, 5);
}

fn hopf_axioms<R: Ring>(alg: &Arc<Uea<R>>, gens: &[BasisDeriv], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let x = random_element(alg, &mut rng, gens, 3, 3);
        let d = x.delta0();
        assert_eq!(d.delta0_slot(0), d.delta0_slot(1), "coassociativity for {x}");
        assert_eq!(d.counit0_slot(0).into_element().unwrap(), x);
        assert_eq!(d.counit0_slot(1).into_element().unwrap(), x);
        let unit = alg.scalar(x.counit0());
        assert_eq!(d.antipode0_slot(0).multiply(), unit, "antipode for {x}");
        assert_eq!(d.antipode0_slot(1).multiply(), unit);
    }
}

#[test]
fn standard_hopf_axioms() {
    let w1 = Uea::free(LieAlgebra::witt(1).unwrap(), RationalField).unwrap();
    let gens: Vec<_> = (-1..=2).map(|a| b(&[a], 1)).collect();
    hopf_axioms(&w1, &gens, 10);
    let u = u3();
    hopf_axioms(&u, &u.lie().jw_basis(), 11);
    let u32_ = Uea::restricted(LieAlgebra::jacobson_witt(3, 2).unwrap(), PrimeField::new(3).unwrap())
        .unwrap();
    let gens = u32_.lie().jw_basis();
    hopf_axioms(&u32_, &gens, 12);
}

#[test]
fn primitive_falling_factorials_split_binomially() {
    let alg = wplus1();
    let h = alg.basis(&[1], 1).unwrap();
    let q = |n: i64| Rational::from_integer(n.into());
    for r in 0..=6u64 {
        let lhs = h.factorial(&q(0), r, FactorialKind::Falling).delta0();
        for s in -2..=2 {
            let mut rhs = Tensor::zero(&alg, 2);
            for i in 0..=r {
                let left = h.factorial(&q(-s), i, FactorialKind::Falling);
                let right = h.factorial(&q(s), r - i, FactorialKind::Falling);
                let c = Rational::from_integer(binom_int(r as i64, i as u32));
                rhs = &rhs + &Tensor::pure(&[&left, &right]).unwrap().scale(&c);
            }
            assert_eq!(lhs, rhs, "r={r} s={s}");
        }
    }
}

#[test]
fn divided_ad_powers_satisfy_leibniz() {
    let p = 5;
    let alg = Uea::free(LieAlgebra::jacobson_witt(p, 1).unwrap(), PrimeField::new(p).unwrap())
        .unwrap();
    let (_, (eb, ec)) = alg.lie().basic_pair(1);
    let e = alg.gen(eb).unwrap().scale_int(ec);
    let d = |l: u64, x: &Element<PrimeField>| Element::ad_divided_power(&e, l, x).unwrap();
    let gens: Vec<_> = alg.lie().jw_basis().into_iter().map(|g| alg.gen(g).unwrap()).collect();
    for l in 0..p {
        for a in &gens {
            for c in &gens {
                let lhs = d(l, &(a * c));
                let mut rhs = alg.zero();
                for l1 in 0..=l {
                    rhs = &rhs + &(&d(l1, a) * &d(l - l1, c));
                }
                assert_eq!(lhs, rhs, "l={l}");
            }
        }
        let (x, y, z) = (&gens[0], &gens[2], &gens[4]);
        let lhs = d(l, &(&(x * y) * z));
        let mut rhs = alg.zero();
        for l1 in 0..=l {
            for l2 in 0..=l - l1 {
                rhs = &rhs + &(&(&d(l1, x) * &d(l2, y)) * &d(l - l1 - l2, z));
            }
        }
        assert_eq!(lhs, rhs, "l={l} triple");
    }
}

#[test]
fn maps_restrict_free_to_restricted() {
    let lie = LieAlgebra::jacobson_witt(3, 1).unwrap();
    let f = PrimeField::new(3).unwrap();
    let free = Uea::free(lie, f).unwrap();
    let u = u3();
    let h = free.basis(&[1], 1).unwrap();
    let image = map_element(&h.pow(4), &u, |c| Ok(*c), |g| GenImage::Scaled(g, PrimeFieldElem(1)))
        .unwrap();
    assert_eq!(image, u.basis(&[1], 1).unwrap().pow(2));
    let killed = map_element(&h, &u, |c| Ok(*c), |_| GenImage::Zero).unwrap();
    assert!(killed.is_zero());
}
