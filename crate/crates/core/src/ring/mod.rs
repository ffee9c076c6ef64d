//! Exact coefficient rings.
//!
//! Every algebraic value in this crate lives over one of a small family of
//! commutative rings: the rationals, a prime field, or a truncated polynomial
//! ring in an indeterminate `t` over either of those. Rings are context
//! objects; their elements are plain data and carry no copy of the ring.

mod binom;
mod prime;
mod rational;
mod tpoly;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

pub use binom::{
    binom_int, binom_rational, factorial, falling_product, lucas_binom_mod_p, multi_binom_mod_p,
};
pub use prime::{is_prime, PrimeField, PrimeFieldElem};
pub use rational::{Rational, RationalField};
pub use tpoly::{TMode, TPoly, TPolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not invertible in characteristic {1}")]
    NotInvertible(String, u64),
    #[error("modulus {0} is not a prime >= 3")]
    BadModulus(u64),
    #[error("series cap must be at least 1")]
    BadCap,
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("ring has no indeterminate t")]
    NoIndeterminate,
}

/// Serializable description of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoeffRing {
    Rational,
    PrimeField { p: u64 },
    Series { base: Box<CoeffRing>, cap: usize },
    Quotient { p: u64, q: u64 },
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rational => write!(f, "Q"),
            CoeffRing::PrimeField { p } => write!(f, "GF({p})"),
            CoeffRing::Series { base, cap } => write!(f, "{base}[t]/(t^{cap})"),
            CoeffRing::Quotient { p, q } => write!(f, "GF({p})[t]/(t^{p} - {q}t)"),
        }
    }
}

/// A base scalar split into sign and magnitude, for the text grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarText {
    pub negative: bool,
    pub magnitude: String,
}

impl ScalarText {
    pub fn is_unit(&self) -> bool {
        self.magnitude == "1"
    }
}

/// A commutative ring with unit, used as a context for its elements.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Fails when the denominator is not a unit of the ring.
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, RingError>;
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> CoeffRing;

    /// `t^k`, for rings that carry the indeterminate.
    fn t_pow(&self, _k: usize) -> Result<Self::Elem, RingError> {
        Err(RingError::NoIndeterminate)
    }

    /// Splits `a` into `(t-degree, base scalar)` pairs in increasing degree.
    fn scalar_terms(&self, a: &Self::Elem) -> Vec<(usize, ScalarText)>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `1/n!`, when it exists.
    fn inv_factorial(&self, n: u64) -> Result<Self::Elem, RingError> {
        self.from_rational(&Rational::new(BigInt::from(1), factorial(n)))
    }
}
