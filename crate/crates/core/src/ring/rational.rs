use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CoeffRing, Ring, RingError, ScalarText};

/// Arbitrary-precision rationals, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

pub(crate) fn rational_text(q: &Rational) -> ScalarText {
    let magnitude = q.abs();
    let magnitude = if magnitude.is_integer() {
        magnitude.numer().to_string()
    } else {
        format!("{}/{}", magnitude.numer(), magnitude.denom())
    };
    ScalarText {
        negative: q.is_negative(),
        magnitude,
    }
}

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn add_assign(&self, a: &mut Rational, b: &Rational) {
        *a += b;
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &Rational) -> Result<Rational, RingError> {
        Ok(q.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn descriptor(&self) -> CoeffRing {
        CoeffRing::Rational
    }

    fn scalar_terms(&self, a: &Rational) -> Vec<(usize, ScalarText)> {
        if a.is_zero() {
            Vec::new()
        } else {
            vec![(0, rational_text(a))]
        }
    }
}
