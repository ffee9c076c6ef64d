use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{agree, first_failure, lift, witness, Check, Config, Outcome, QSeries};
use crate::liealg::{BasisDeriv, RMatrixData};
use crate::ring::{binom_int, Rational, Ring};
use crate::twist::{Quantized, TwistError};
use crate::uea::{Element, FactorialKind, Tensor};

type El = Element<QSeries>;
type Ten = Tensor<QSeries>;

const SAMPLES: usize = 6;

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Random `x^alpha d_i` with every component of `alpha` in `-2..=2`.
pub(super) fn sample_generators(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<BasisDeriv> {
    (0..count)
        .map(|_| {
            let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            BasisDeriv::new(&alpha, rng.gen_range(1..=n)).expect("small exponents")
        })
        .collect()
}

struct Ctx {
    qz: Quantized<QSeries>,
    rm: RMatrixData,
    cap: usize,
}

impl Ctx {
    fn ring(&self) -> &QSeries {
        self.qz.uea().ring()
    }

    fn q(&self, x: &Rational) -> <QSeries as Ring>::Elem {
        self.ring().from_rational(x).expect("rational coefficients")
    }

    fn t(&self, l: usize) -> <QSeries as Ring>::Elem {
        self.ring().t_pow(l).expect("series ring")
    }

    fn gen(&self, b: BasisDeriv) -> El {
        self.qz.uea().gen(b).expect("Witt symbol")
    }

    fn h(&self) -> &El {
        &self.qz.directions()[0].h
    }

    fn e(&self) -> &El {
        &self.qz.directions()[0].e
    }

    fn h_fact(&self, a: &Rational, r: u64, kind: FactorialKind) -> El {
        self.h().factorial(&self.q(a), r, kind)
    }

    fn exponent(&self, b: BasisDeriv) -> Rational {
        self.rm.exponent(&b.alpha()).expect("matching rank")
    }

    fn twist(&self, a: &Rational) -> Result<(Ten, Ten), TwistError> {
        let t = self.qz.basic_twist(0, &self.q(a))?;
        Ok((t.forward, t.inverse))
    }

    fn twistors(&self, a: &Rational) -> Result<(El, El), TwistError> {
        let p = self.qz.antipode_twistors(0, &self.q(a))?;
        Ok((p.v, p.u))
    }

    fn power(&self, m: &Rational) -> Result<El, TwistError> {
        self.qz.one_minus_et_power(0, m)
    }

    fn pure(&self, a: &El, b: &El) -> Ten {
        Tensor::pure(&[a, b]).expect("same algebra")
    }

    /// `x^{alpha + l beta} (a_l d_i - b_l d_j)` for `x = x^alpha d_i`, `y = x^beta d_j`.
    fn iterated_ad_closed(&self, x: BasisDeriv, y: BasisDeriv, l: u64) -> El {
        let (alpha, beta) = (x.alpha(), y.alpha());
        let (i, j) = (x.index() - 1, y.index() - 1);
        let a = |l: u64| -> BigInt {
            (0..l as i64).fold(BigInt::from(1), |acc, q| acc * (alpha[j] + q * beta[j]))
        };
        let al = a(l);
        let bl = if l == 0 {
            BigInt::from(0)
        } else {
            BigInt::from(l) * BigInt::from(beta[i]) * a(l - 1)
        };
        let shift: Vec<i64> = beta.iter().map(|b| b * l as i64).collect();
        let Some(target) = x.shifted(&shift) else {
            return self.qz.uea().zero();
        };
        let ring = self.ring();
        &self.gen(target).scale(&ring.from_bigint(&al))
            - &self.gen(target.with_index(j + 1)).scale(&ring.from_bigint(&bl))
    }
}

pub(super) fn commutation_checks(
    rm: &RMatrixData,
    cap: usize,
    seed: u64,
) -> Result<Vec<Check>, TwistError> {
    let ctx = Ctx {
        qz: Config::general_context(rm, cap)?.with_rational_exponents(true),
        rm: rm.clone(),
        cap,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rm.n();
    let gens = sample_generators(&mut rng, n, SAMPLES);
    let pairs: Vec<(BasisDeriv, BasisDeriv)> = sample_generators(&mut rng, n, SAMPLES)
        .into_iter()
        .zip(sample_generators(&mut rng, n, SAMPLES))
        .collect();
    let shifts = [int(-1), int(0), frac(1, 2), int(2)];
    let int_shifts: Vec<Rational> = (-2..=2).map(int).collect();

    let mut out = Vec::new();
    for kind in [FactorialKind::Falling, FactorialKind::Rising] {
        let tag = match kind {
            FactorialKind::Falling => "falling",
            FactorialKind::Rising => "rising",
        };
        out.push(Check::from_outcome(
            format!("commutation.generator_past_{tag}"),
            first_failure(&gens, |&g| {
                let x = ctx.gen(g);
                let c = ctx.exponent(g);
                for a in &shifts {
                    for m in 0..=3 {
                        let lhs = &x * &ctx.h_fact(a, m, kind);
                        let rhs = &ctx.h_fact(&(a - &c), m, kind) * &x;
                        agree(&lhs, &rhs, || witness(&x))?;
                    }
                }
                Ok(())
            }),
        ));
        out.push(Check::from_outcome(
            format!("commutation.e_power_past_{tag}"),
            (|| {
                for k in 0..=3u64 {
                    let ek = ctx.e().pow(k);
                    for a in &shifts {
                        for m in 0..=3 {
                            let lhs = &ek * &ctx.h_fact(a, m, kind);
                            let rhs = &ctx.h_fact(&(a - int(k as i64)), m, kind) * &ek;
                            agree(&lhs, &rhs, || witness(&ek))?;
                        }
                    }
                }
                Ok(())
            })(),
        ));
    }

    out.push(Check::from_outcome(
        "commutation.generator_times_power",
        first_failure(&pairs, |&(xb, yb)| {
            let (x, y) = (ctx.gen(xb), ctx.gen(yb));
            for m in 0..=3u64 {
                let lhs = &x * &y.pow(m);
                let mut rhs = ctx.qz.uea().zero();
                for l in 0..=m {
                    let c = binom_int(m as i64, l as u32) * if l % 2 == 1 { -1 } else { 1 };
                    let term = &y.pow(m - l) * &ctx.iterated_ad_closed(xb, yb, l);
                    rhs = &rhs + &term.scale(&ctx.ring().from_bigint(&c));
                }
                agree(&lhs, &rhs, || witness(&(&x * &y)))?;
            }
            Ok(())
        }),
    ));
    out.push(Check::from_outcome(
        "commutation.iterated_ad",
        first_failure(&pairs, |&(xb, yb)| {
            let (x, y) = (ctx.gen(xb), ctx.gen(yb));
            let mut acc = x.clone();
            for l in 0..=3u64 {
                let rhs = ctx.iterated_ad_closed(xb, yb, l);
                agree(&acc, &rhs, || witness(&(&y * &x)))?;
                acc = Element::ad(&y, &acc).map_err(|_| witness(&x))?;
            }
            Ok(())
        }),
    ));
    out.push(Check::from_outcome(
        "commutation.divided_ad_closed_form",
        first_failure(&gens, |&g| {
            let x = ctx.gen(g);
            for l in 0..=3u64 {
                let lhs = Element::ad_divided_power(ctx.e(), l, &x).map_err(|_| witness(&x))?;
                let rhs = lift(&x, ctx.qz.d_closed(g, &[l]))?;
                agree(&lhs, &rhs, || witness(&x))?;
            }
            Ok(())
        }),
    ));
    out.push(Check::from_outcome("coproduct.falling_factorial_split", {
        let mut res: Outcome = Ok(());
        'outer: for r in 0..=4u64 {
            let lhs = ctx.h_fact(&int(0), r, FactorialKind::Falling).delta0();
            for s in &int_shifts {
                let mut rhs = Tensor::zero(ctx.qz.uea(), 2);
                for i in 0..=r {
                    let c = ctx.ring().from_bigint(&binom_int(r as i64, i as u32));
                    let left = ctx.h_fact(&-s, i, FactorialKind::Falling);
                    let right = ctx.h_fact(s, r - i, FactorialKind::Falling);
                    rhs = &rhs + &ctx.pure(&left, &right).scale(&c);
                }
                if lhs != rhs {
                    res = Err(witness(&ctx.h_fact(&int(0), r, FactorialKind::Falling)));
                    break 'outer;
                }
            }
        }
        res
    }));

    let twist_laws = (|| -> Result<[Outcome; 3], TwistError> {
        let one = ctx.qz.uea().one();
        let mut product: Outcome = Ok(());
        let mut twistors: Outcome = Ok(());
        let mut inverse: Outcome = Ok(());
        for a in &int_shifts {
            let (fa, _) = ctx.twist(a)?;
            let (va, ua) = ctx.twistors(a)?;
            for b in &int_shifts {
                let (_, inv_b) = ctx.twist(b)?;
                let (_, ub) = ctx.twistors(b)?;
                if product.is_ok() {
                    let rhs = ctx.pure(&one, &ctx.power(&(a - b))?);
                    product = agree(&(&fa * &inv_b), &rhs, || witness(ctx.h()));
                }
                if twistors.is_ok() {
                    let rhs = ctx.power(&-(a + b))?;
                    twistors = agree(&(&va * &ub), &rhs, || witness(&va));
                }
            }
            let (_, inv_a) = ctx.twist(a)?;
            let (v_neg, _) = ctx.twistors(&-a)?;
            let unit = Tensor::one(ctx.qz.uea(), 2);
            if inverse.is_ok() {
                inverse = agree(&(&inv_a * &fa), &unit, || witness(ctx.h()))
                    .and_then(|_| agree(&(&fa * &inv_a), &unit, || witness(ctx.h())))
                    .and_then(|_| agree(&(&ua * &v_neg), &one, || witness(&ua)))
                    .and_then(|_| agree(&(&v_neg * &ua), &one, || witness(&ua)));
            }
        }
        Ok([product, twistors, inverse])
    })()?;
    let [product, twistors, inverse] = twist_laws;
    out.push(Check::from_outcome("twist.shifted_product", product));
    out.push(Check::from_outcome("twistor.shifted_product", twistors));
    out.push(Check::from_outcome("twist.shifted_inverse", inverse));

    let slot_shifts = [int(0), int(1), frac(-1, 2)];
    out.push(Check::from_outcome(
        "twist.left_slot_commutation",
        first_failure(&gens, |&g| {
            let x = ctx.gen(g);
            let c = ctx.exponent(g);
            let one = ctx.qz.uea().one();
            for s in 0..=2u64 {
                let xs = ctx.pure(&x.pow(s), &one);
                for a in &slot_shifts {
                    let (_, fa) = lift(&x, ctx.twist(a))?;
                    let (_, shifted) = lift(&x, ctx.twist(&(a - int(s as i64) * &c)))?;
                    agree(&(&xs * &fa), &(&shifted * &xs), || witness(&x))?;
                }
            }
            Ok(())
        }),
    ));
    for (name, closed) in [
        ("twist.right_slot_commutation", true),
        ("twist.right_slot_power_commutation", false),
    ] {
        out.push(Check::from_outcome(
            name,
            first_failure(&gens, |&g| {
                let x = ctx.gen(g);
                let one = ctx.qz.uea().one();
                let powers: &[u64] = if closed { &[1] } else { &[1, 2] };
                for &s in powers {
                    let xs = x.pow(s);
                    for a in &slot_shifts {
                        let (_, fa) = lift(&x, ctx.twist(a))?;
                        let lhs = &ctx.pure(&one, &xs) * &fa;
                        let mut rhs = Tensor::zero(ctx.qz.uea(), 2);
                        for l in 0..ctx.cap as u64 {
                            let d = if closed {
                                lift(&x, ctx.qz.d_closed(g, &[l]))?
                            } else {
                                Element::ad_divided_power(ctx.e(), l, &xs).map_err(|_| witness(&x))?
                            };
                            let (_, f_shift) = lift(&x, ctx.twist(&(a + int(l as i64))))?;
                            let inner = ctx.pure(&ctx.h_fact(a, l, FactorialKind::Rising), &d.scale(&ctx.t(l as usize)));
                            let term = &f_shift * &inner;
                            rhs = if l % 2 == 1 { &rhs - &term } else { &rhs + &term };
                        }
                        agree(&lhs, &rhs, || witness(&xs))?;
                    }
                }
                Ok(())
            }),
        ));
    }
    for (name, closed) in [
        ("twistor.commutation", true),
        ("twistor.power_commutation", false),
    ] {
        out.push(Check::from_outcome(
            name,
            first_failure(&gens, |&g| {
                let x = ctx.gen(g);
                let c = ctx.exponent(g);
                let powers: &[u64] = if closed { &[1] } else { &[1, 2] };
                for &s in powers {
                    let xs = x.pow(s);
                    for a in &slot_shifts {
                        let (_, ua) = lift(&x, ctx.twistors(a))?;
                        let (_, shifted) = lift(&x, ctx.twistors(&(a + int(s as i64) * &c)))?;
                        let mut sum = ctx.qz.uea().zero();
                        for l in 0..ctx.cap as u64 {
                            let d = if closed {
                                lift(&x, ctx.qz.d_closed(g, &[l]))?
                            } else {
                                Element::ad_divided_power(ctx.e(), l, &xs).map_err(|_| witness(&x))?
                            };
                            let term = &d * &ctx.h_fact(&(int(1) - a), l, FactorialKind::Rising);
                            sum = &sum + &term.scale(&ctx.t(l as usize));
                        }
                        agree(&(&xs * &ua), &(&shifted * &sum), || witness(&xs))?;
                    }
                }
                Ok(())
            }),
        ));
    }

    out.push(Check::from_outcome(
        "coproduct.power_closed_form",
        first_failure(&gens, |&g| {
            let x = ctx.gen(g);
            let c = ctx.exponent(g);
            for s in 1..=3u64 {
                let lhs = lift(&x, ctx.qz.delta(&x.pow(s)))?;
                let mut rhs = Tensor::zero(ctx.qz.uea(), 2);
                for j in 0..=s {
                    let bin = ctx.ring().from_bigint(&binom_int(s as i64, j as u32));
                    let xj = x.pow(j);
                    let rest = x.pow(s - j);
                    for l in 0..ctx.cap as u64 {
                        let d = Element::ad_divided_power(ctx.e(), l, &rest).map_err(|_| witness(&x))?;
                        if d.is_zero() {
                            continue;
                        }
                        let m = int(j as i64) * &c - int(l as i64);
                        let right = &lift(&x, ctx.power(&m))? * &d;
                        let left = &xj * &ctx.h_fact(&int(0), l, FactorialKind::Rising);
                        let mut coeff = ctx.ring().mul(&bin, &ctx.t(l as usize));
                        if l % 2 == 1 {
                            coeff = ctx.ring().neg(&coeff);
                        }
                        rhs = &rhs + &ctx.pure(&left, &right).scale(&coeff);
                    }
                }
                agree(&lhs, &rhs, || witness(&x.pow(s)))?;
            }
            Ok(())
        }),
    ));
    out.push(Check::from_outcome(
        "antipode.power_closed_form",
        first_failure(&gens, |&g| {
            let x = ctx.gen(g);
            let c = ctx.exponent(g);
            for s in 1..=3u64 {
                let xs = x.pow(s);
                let lhs = lift(&x, ctx.qz.antipode(&xs))?;
                let mut sum = ctx.qz.uea().zero();
                for l in 0..ctx.cap as u64 {
                    let d = Element::ad_divided_power(ctx.e(), l, &xs).map_err(|_| witness(&x))?;
                    let term = &d * &ctx.h_fact(&int(1), l, FactorialKind::Rising);
                    sum = &sum + &term.scale(&ctx.t(l as usize));
                }
                let pre = lift(&x, ctx.power(&(-int(s as i64) * &c)))?;
                let mut rhs = &pre * &sum;
                if s % 2 == 1 {
                    rhs = -rhs;
                }
                agree(&lhs, &rhs, || witness(&xs))?;
            }
            Ok(())
        }),
    ));
    Ok(out)
}
