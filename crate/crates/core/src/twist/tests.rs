use super::*;
use crate::cli::grammar::{format_tensor, parse_tensor};
use crate::ring::{PrimeField, PrimeFieldElem, RationalField, TPolyRing};

type Quot = TPolyRing<PrimeField>;
type QSeries = TPolyRing<RationalField>;

fn restricted(p: u64, n: usize, q: u64, eta: Vec<usize>) -> Quantized<Quot> {
    let ring = TPolyRing::quotient(PrimeField::new(p).unwrap(), PrimeFieldElem(q)).unwrap();
    let u = Uea::restricted(LieAlgebra::jacobson_witt(p, n).unwrap(), ring).unwrap();
    Quantized::new(u, Setting::Modular { eta }).unwrap()
}

fn free_modular(p: u64, n: usize, cap: usize, eta: Vec<usize>) -> Quantized<TPolyRing<PrimeField>> {
    let ring = TPolyRing::series(PrimeField::new(p).unwrap(), cap).unwrap();
    let u = Uea::free(LieAlgebra::jacobson_witt(p, n).unwrap(), ring).unwrap();
    Quantized::new(u, Setting::Modular { eta }).unwrap()
}

fn basic(n: usize, cap: usize, eta: Vec<usize>) -> Quantized<QSeries> {
    let ring = TPolyRing::series(RationalField, cap).unwrap();
    let u = Uea::free(LieAlgebra::wplus(n).unwrap(), ring).unwrap();
    Quantized::new(u, Setting::Basic { eta }).unwrap()
}

fn general(d0: &[i64], d0p: &[i64], gamma: &[i64], cap: usize) -> Quantized<QSeries> {
    let v = |xs: &[i64]| xs.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let rm = RMatrixData::new(v(d0), v(d0p), gamma.to_vec()).unwrap();
    let ring = TPolyRing::series(RationalField, cap).unwrap();
    let u = Uea::free(LieAlgebra::witt(gamma.len()).unwrap(), ring).unwrap();
    Quantized::new(u, Setting::General(rm)).unwrap()
}

fn assert_matches_conjugation<R: Ring>(qz: &Quantized<R>, gens: &[BasisDeriv]) {
    let twist = qz.twist().unwrap();
    for &g in gens {
        let x = qz.uea().gen(g).unwrap();
        let (delta, s) = qz.conjugation_oracle(&twist, &x);
        assert_eq!(qz.delta(&x).unwrap(), delta, "coproduct of {g}");
        assert_eq!(qz.antipode(&x).unwrap(), s, "antipode of {g}");
    }
}

fn b(alpha: &[i64], i: usize) -> BasisDeriv {
    BasisDeriv::new(alpha, i).unwrap()
}

#[test]
fn restricted_twist_example() {
    let qz = restricted(3, 1, 0, vec![1]);
    let u = qz.uea();
    let twist = qz.twist().unwrap();
    let expected = parse_tensor(
        "1 (x) 1 + x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2 + 2*x(1)D1^2 (x) x(2)D1^2*t^2",
        u,
        2,
    )
    .unwrap();
    assert_eq!(twist.forward, expected, "{}", format_tensor(&twist.forward));
    assert_eq!(&twist.forward * &twist.inverse, Tensor::one(u, 2));
    assert_eq!(&twist.inverse * &twist.forward, Tensor::one(u, 2));
}

#[test]
fn twist_inverse_pairs() {
    for q in [0, 1] {
        let qz = restricted(3, 2, q, vec![1, 2]);
        let twist = qz.twist().unwrap();
        assert_eq!(&twist.forward * &twist.inverse, Tensor::one(qz.uea(), 2));
    }
    let qz = basic(2, 4, vec![1, 2]);
    let twist = qz.twist().unwrap();
    assert_eq!(&twist.forward * &twist.inverse, Tensor::one(qz.uea(), 2));
}

#[test]
fn antipode_twistors_invert() {
    let qz = restricted(5, 1, 1, vec![1]);
    let zero = qz.uea().ring().zero();
    let pair = qz.antipode_twistors(0, &zero).unwrap();
    assert_eq!(&pair.v * &pair.u, qz.uea().one());
    assert_eq!(&pair.u * &pair.v, qz.uea().one());
}

#[test]
fn geometric_powers() {
    let qz = restricted(3, 1, 1, vec![1]);
    let u = qz.uea();
    let int = |n: i64| Rational::from_integer(n.into());
    let inv = qz.one_minus_et_power(0, &int(-1)).unwrap();
    let one = qz.one_minus_et_power(0, &int(1)).unwrap();
    assert_eq!(&inv * &one, u.one());
    assert_eq!(qz.one_minus_et_power(0, &int(3)).unwrap(), u.one());
    assert_eq!(
        &qz.one_minus_et_power(0, &int(-2)).unwrap() * &qz.one_minus_et_power(0, &int(2)).unwrap(),
        u.one()
    );
}

#[test]
fn restricted_closed_forms_match_conjugation() {
    for q in [0, 1] {
        let qz = restricted(3, 1, q, vec![1]);
        assert_matches_conjugation(&qz, &qz.generators());
    }
    for eta in [vec![1], vec![2], vec![1, 2]] {
        let qz = restricted(3, 2, 1, eta);
        assert_matches_conjugation(&qz, &qz.generators());
    }
}

#[test]
fn free_modular_closed_forms_match_conjugation() {
    let qz = free_modular(3, 1, 3, vec![1]);
    assert_matches_conjugation(&qz, &qz.generators());
    let qz = free_modular(5, 1, 4, vec![1]);
    assert_matches_conjugation(&qz, &qz.generators());
}

#[test]
fn basic_closed_forms_match_conjugation() {
    let qz = basic(1, 4, vec![1]);
    let gens: Vec<_> = (0..4).map(|a| b(&[a], 1)).collect();
    assert_matches_conjugation(&qz, &gens);
    let qz = basic(2, 4, vec![1, 2]);
    let mut gens = Vec::new();
    for a0 in 0..3 {
        for a1 in 0..3 {
            for i in 1..=2 {
                gens.push(b(&[a0, a1], i));
            }
        }
    }
    assert_matches_conjugation(&qz, &gens);
}

#[test]
fn general_closed_forms_match_conjugation() {
    let qz = general(&[1, 0], &[1, 0], &[1, 0], 4);
    let gens = [b(&[0, 0], 1), b(&[1, 0], 1), b(&[2, 1], 2), b(&[-1, 3], 1)];
    assert_matches_conjugation(&qz, &gens);
    let qz = general(&[2, 1], &[0, 1], &[1, 1], 4);
    let gens = [b(&[1, 1], 1), b(&[0, 0], 2), b(&[2, -1], 2)];
    assert_matches_conjugation(&qz, &gens);
}

#[test]
fn non_integral_exponent_needs_flag() {
    let qz = general(&[2, 1], &[0, 1], &[1, 1], 3);
    let g = b(&[1, 0], 1);
    assert!(matches!(
        qz.delta_generator(g),
        Err(TwistError::NonIntegralExponent(_))
    ));
    let qz = qz.with_rational_exponents(true);
    assert_matches_conjugation(&qz, &[g]);
}

#[test]
fn toral_coproduct_text() {
    let qz = restricted(3, 1, 1, vec![1]);
    let h = qz.uea().gen(b(&[1], 1)).unwrap();
    let d = qz.delta(&h).unwrap();
    assert_eq!(
        format_tensor(&d),
        "1 (x) x(1)D1 + x(1)D1 (x) 1 + 2*x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2"
    );
}

#[test]
fn toral_symbol_example() {
    // eta = e_k, x = x^(e_i) D_i: x (x) 1 + 1 (x) x + delta_ik h (x) (1 - e t)^-1 e t.
    for (i, q) in [(1, 0), (2, 1)] {
        let qz = restricted(3, 2, q, vec![1]);
        let u = qz.uea();
        let mut alpha = [0, 0];
        alpha[i - 1] = 1;
        let x = u.gen(b(&alpha, i)).unwrap();
        let mut expected = &Tensor::pure(&[&x, &u.one()]).unwrap() + &Tensor::pure(&[&u.one(), &x]).unwrap();
        if i == 1 {
            let dir = &qz.directions()[0];
            let geo = qz.one_minus_et_power(0, &Rational::from_integer((-1).into())).unwrap();
            let et = dir.e.scale(&u.ring().t_pow(1).unwrap());
            expected = &expected + &Tensor::pure(&[&dir.h, &(&geo * &et)]).unwrap();
        }
        assert_eq!(qz.delta(&x).unwrap(), expected);
    }
}

#[test]
fn rejects_bad_settings() {
    let ring = TPolyRing::series(RationalField, 3).unwrap();
    let u = Uea::free(LieAlgebra::wplus(2).unwrap(), ring).unwrap();
    assert!(matches!(
        Quantized::new(u.clone(), Setting::Basic { eta: vec![] }),
        Err(TwistError::NoDirections)
    ));
    assert!(matches!(
        Quantized::new(u.clone(), Setting::Basic { eta: vec![2, 1] }),
        Err(TwistError::BadDirection(1))
    ));
    assert!(matches!(
        Quantized::new(u, Setting::Modular { eta: vec![1] }),
        Err(TwistError::FlavorMismatch { .. })
    ));
    assert_eq!(Setting::eta_directions(&[true, false, true]), vec![1, 3]);
}
