use num_bigint::BigUint;

use super::{witness, Check, Config, Outcome, Status};
use crate::liealg::{BasisDeriv, DividedPowerModule, LieAlgebra, OpMatrix};
use crate::ring::PrimeField;
use crate::uea::Uea;
use crate::twist::TwistError;

/// Largest `n p^n` for which the restricted basis is enumerated.
const MAX_ENUMERATED_TOTAL: u32 = 5;

pub(super) fn checks(p: u64, n: usize, _eta: &[usize], q: u64) -> Result<Vec<Check>, TwistError> {
    let gens = (p as u32).pow(n as u32) * n as u32;
    let expected = BigUint::from(p).pow(gens);
    if gens > MAX_ENUMERATED_TOTAL {
        return Ok(vec![structural(p, n, q)?]);
    }
    let u = Config::modular_algebra(p, n, q)?;
    let basis = u.restricted_basis()?;
    let count = BigUint::from(basis.len());
    let scalars = BigUint::from(u.ring().bound());
    let outcome = |got: &BigUint, want: &BigUint| -> Outcome {
        if got == want {
            Ok(())
        } else {
            Err(got.to_string())
        }
    };
    Ok(vec![
        Check::from_outcome("dims.restricted_basis", outcome(&count, &expected)),
        Check::from_outcome(
            "dims.quantized",
            outcome(&(&count * &scalars), &(&expected * BigUint::from(p))),
        ),
    ])
}

/// Beyond the enumeration bound: every basis symbol is a generator whose
/// restricted-mode exponent is capped at `p - 1`, which is what the count
/// `p^(n p^n)` rests on. Reported as structural rather than pass.
fn structural(p: u64, n: usize, q: u64) -> Result<Check, TwistError> {
    let u = Config::modular_algebra(p, n, q)?;
    let lie = u.lie();
    let gens = lie.jw_basis();
    let expected_gens = (p as usize).pow(n as u32) * n;
    let bounded = gens.iter().all(|&b| {
        let z = u.gen(b).expect("basis symbol");
        let below = z.pow(p - 1);
        below.terms().keys().any(|m| m.factors() == [(b, (p - 1) as u32)])
            && z.pow(p).terms().keys().all(|m| m.degree() <= 1)
    });
    Ok(if gens.len() == expected_gens && bounded {
        Check::with_status("dims.restricted_basis", Status::Structural)
    } else {
        Check::fail("dims.restricted_basis", gens.len().to_string())
    })
}

/// The bracket and the `p`-map against the divided power representation.
pub(super) fn oracle_checks(p: u64, n: usize) -> Vec<Check> {
    let lie = match LieAlgebra::jacobson_witt(p, n) {
        Ok(l) => l,
        Err(e) => return vec![Check::fail("oracle.setup", e.to_string())],
    };
    let module = DividedPowerModule::new(lie);
    let field = PrimeField::new(p).expect("prime checked by the algebra");
    let alg = Uea::free(lie, field).expect("free algebra");
    // The ordered product `a.b` names the failing pair.
    let pair = |a: BasisDeriv, b: BasisDeriv| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        witness(&alg.word(&[lo, hi]).expect("basis symbols"))
    };
    let gens = lie.jw_basis();
    let mut bracket: Outcome = Ok(());
    'outer: for &a in &gens {
        for &b in &gens {
            let lhs = module.matrix_of_combination(&lie.bracket(a, b));
            let rhs = module.matrix(a).commutator(&module.matrix(b));
            if lhs != rhs {
                bracket = Err(pair(a, b));
                break 'outer;
            }
        }
    }
    let mut p_power: Outcome = Ok(());
    for &a in &gens {
        let lhs = match lie.p_power_basis(a) {
            Some(c) => module.matrix(c),
            None => OpMatrix::zero(p, module.dim()),
        };
        if lhs != module.matrix(a).pow(p) {
            p_power = Err(witness(&alg.gen(a).expect("basis symbol")));
            break;
        }
    }
    vec![
        Check::from_outcome("oracle.bracket", bracket),
        Check::from_outcome("oracle.p_power", p_power),
    ]
}
