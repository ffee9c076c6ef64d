//! Text form of elements and tensors.
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := [coeff '*'] mono (' (x) ' mono)* ['*' tpow]
//! coeff   := integer | integer '/' integer
//! mono    := '1' | factor ('.' factor)*
//! factor  := 'x(' int (',' int)* ')D' int ['^' exp]
//! tpow    := 't' ['^' int]
//! ```
//!
//! `0` is the zero element. The formatter always writes the monomial (so a
//! bare constant prints as `3*1`); the parser also accepts a term made of a
//! coefficient alone.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::liealg::BasisDeriv;
use crate::ring::{Rational, Ring, RingError};
use crate::uea::{Element, Mode, Monomial, Tensor, Uea, UeaError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("terms have {0} and {1} tensor slots")]
    Arity(usize, usize),
    #[error("exponent {exp} of {symbol} is out of range for restricted mode (p = {p})")]
    ExponentRange { symbol: String, exp: u32, p: u64 },
    #[error(transparent)]
    Uea(#[from] UeaError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A parsed expression: a plain element, or a tensor of two or more slots.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed<R: Ring> {
    Element(Element<R>),
    Tensor(Tensor<R>),
}

fn write_tpow(out: &mut String, k: usize) {
    match k {
        0 => {}
        1 => out.push_str("*t"),
        _ => out.push_str(&format!("*t^{k}")),
    }
}

fn write_terms<'a, R: Ring>(
    ring: &R,
    terms: impl Iterator<Item = (String, &'a R::Elem)>,
) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        for (deg, s) in ring.scalar_terms(c) {
            if out.is_empty() {
                if s.negative {
                    out.push('-');
                }
            } else {
                out.push_str(if s.negative { " - " } else { " + " });
            }
            if !s.is_unit() {
                out.push_str(&s.magnitude);
                out.push('*');
            }
            out.push_str(&mono);
            write_tpow(&mut out, deg);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_monomial(m: &Monomial) -> String {
    m.to_string()
}

/// Canonical text of an element: terms in monomial order, then by `t`-degree.
pub fn format_element<R: Ring>(x: &Element<R>) -> String {
    write_terms(
        x.ring(),
        x.terms().iter().map(|(m, c)| (format_monomial(m), c)),
    )
}

/// Canonical text of a tensor, slots joined by ` (x) `.
pub fn format_tensor<R: Ring>(x: &Tensor<R>) -> String {
    write_terms(
        x.algebra().ring(),
        x.terms().iter().map(|(k, c)| {
            let slots: Vec<String> = k.iter().map(format_monomial).collect();
            (slots.join(" (x) "), c)
        }),
    )
}

struct Term {
    coeff: Rational,
    slots: Vec<Vec<(BasisDeriv, u32)>>,
    tpow: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GrammarError> {
        Err(GrammarError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), GrammarError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn at_separator(&self) -> bool {
        let rest = &self.src[self.pos..];
        let trimmed = rest
            .iter()
            .position(|b| !b.is_ascii_whitespace())
            .map_or(&rest[rest.len()..], |i| &rest[i..]);
        trimmed.starts_with(b"(x)")
    }

    fn eat_separator(&mut self) -> bool {
        if self.at_separator() {
            self.skip_ws();
            self.pos += 3;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, GrammarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn signed_int(&mut self) -> Result<i64, GrammarError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = match d.parse() {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn small(&mut self) -> Result<u32, GrammarError> {
        let d = self.digits()?;
        match d.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err("exponent out of range"),
        }
    }

    fn coeff(&mut self) -> Result<Rational, GrammarError> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.eat(b'/') {
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den == BigInt::from(0) {
                return self.err("zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<(BasisDeriv, u32), GrammarError> {
        let start = self.pos;
        self.expect(b'x')?;
        self.expect(b'(')?;
        let mut alpha = vec![self.signed_int()?];
        while self.eat(b',') {
            alpha.push(self.signed_int()?);
        }
        self.expect(b')')?;
        self.expect(b'D')?;
        let i = self.small()? as usize;
        if alpha.len() != self.n {
            self.pos = start;
            return self.err(format!("expected {} exponent components", self.n));
        }
        let b = match BasisDeriv::new(&alpha, i) {
            Ok(b) => b,
            Err(e) => {
                self.pos = start;
                return self.err(e.to_string());
            }
        };
        let exp = if self.eat(b'^') { self.small()? } else { 1 };
        Ok((b, exp))
    }

    fn mono(&mut self) -> Result<Vec<(BasisDeriv, u32)>, GrammarError> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.factor()?];
        while self.eat(b'.') {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn tpow(&mut self) -> Result<usize, GrammarError> {
        self.expect(b't')?;
        if self.eat(b'^') {
            Ok(self.small()? as usize)
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<Term, GrammarError> {
        let mut coeff = Rational::from_integer(1.into());
        let mut slots = Vec::new();
        let mut tpow = 0;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let save = self.pos;
                let value = self.coeff()?;
                if self.eat(b'*') {
                    coeff = value;
                    if self.peek() == Some(b't') {
                        tpow = self.tpow()?;
                        slots.push(Vec::new());
                        return Ok(Term { coeff, slots, tpow });
                    }
                    slots.push(self.mono()?);
                } else if self.at_separator() {
                    self.pos = save;
                    slots.push(self.mono()?);
                    if self.pos != save + 1 {
                        return self.err("a leading slot must be '1' or a monomial");
                    }
                } else {
                    coeff = value;
                    slots.push(Vec::new());
                }
            }
            Some(b't') => {
                tpow = self.tpow()?;
                slots.push(Vec::new());
                return Ok(Term { coeff, slots, tpow });
            }
            _ => slots.push(self.mono()?),
        }
        while self.eat_separator() {
            slots.push(self.mono()?);
        }
        if self.eat(b'*') {
            tpow = self.tpow()?;
        }
        Ok(Term { coeff, slots, tpow })
    }

    fn terms(&mut self) -> Result<Vec<Term>, GrammarError> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(Vec::new());
            }
            self.pos = save;
        }
        let mut out = Vec::new();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            self.skip_ws();
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            out.push(t);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }
}

fn slot_element<R: Ring>(
    alg: &Arc<Uea<R>>,
    factors: &[(BasisDeriv, u32)],
) -> Result<Element<R>, GrammarError> {
    let mut acc = alg.one();
    for &(b, exp) in factors {
        if alg.mode() == Mode::Restricted {
            let p = alg.lie().p().expect("restricted algebras carry p");
            if u64::from(exp) >= p {
                return Err(GrammarError::ExponentRange {
                    symbol: b.to_string(),
                    exp,
                    p,
                });
            }
        }
        acc = &acc * &alg.gen(b)?.pow(u64::from(exp));
    }
    Ok(acc)
}

/// Parses an element or tensor in the given algebra. Monomials written out of
/// order are multiplied into normal form.
pub fn parse<R: Ring>(text: &str, alg: &Arc<Uea<R>>) -> Result<Parsed<R>, GrammarError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        n: alg.lie().n(),
    };
    let terms = parser.terms()?;
    let arity = terms.first().map_or(1, |t| t.slots.len());
    let ring = alg.ring();
    let mut out = Tensor::zero(alg, arity);
    for t in terms {
        if t.slots.len() != arity {
            return Err(GrammarError::Arity(arity, t.slots.len()));
        }
        let mut c = ring.from_rational(&t.coeff)?;
        if t.tpow > 0 {
            c = ring.mul(&c, &ring.t_pow(t.tpow)?);
        }
        let parts = t
            .slots
            .iter()
            .map(|s| slot_element(alg, s))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&Element<R>> = parts.iter().collect();
        out = &out + &Tensor::pure(&refs)?.scale(&c);
    }
    if arity == 1 {
        Ok(Parsed::Element(out.into_element()?))
    } else {
        Ok(Parsed::Tensor(out))
    }
}

pub fn parse_element<R: Ring>(text: &str, alg: &Arc<Uea<R>>) -> Result<Element<R>, GrammarError> {
    match parse(text, alg)? {
        Parsed::Element(x) => Ok(x),
        Parsed::Tensor(t) => Err(GrammarError::Arity(1, t.arity())),
    }
}

/// Parses a tensor with `arity` slots. The text `0` carries no arity, so it
/// becomes the zero tensor of the requested one.
pub fn parse_tensor<R: Ring>(text: &str, alg: &Arc<Uea<R>>, arity: usize) -> Result<Tensor<R>, GrammarError> {
    let t = match parse(text, alg)? {
        Parsed::Element(x) => Tensor::from_element(&x),
        Parsed::Tensor(t) => t,
    };
    if t.is_zero() {
        Ok(Tensor::zero(alg, arity))
    } else if t.arity() != arity {
        Err(GrammarError::Arity(arity, t.arity()))
    } else {
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;
    use crate::ring::{PrimeField, RationalField, TPolyRing};

    #[test]
    fn element_round_trip() {
        let alg = Uea::free(LieAlgebra::witt(1).unwrap(), RationalField).unwrap();
        for text in [
            "0",
            "1",
            "3*1",
            "x(0)D1",
            "-x(1)D1 + 3/2*x(-1)D1^2",
            "-2*x(2)D1 + x(0)D1.x(1)D1",
        ] {
            let x = parse_element(text, &alg).unwrap();
            assert_eq!(format_element(&x), text);
            assert_eq!(parse_element(&format_element(&x), &alg).unwrap(), x);
        }
    }

    #[test]
    fn out_of_order_words_are_normalized() {
        let alg = Uea::free(LieAlgebra::witt(1).unwrap(), RationalField).unwrap();
        let x = parse_element("x(2)D1.x(1)D1", &alg).unwrap();
        assert_eq!(format_element(&x), "-x(3)D1 + x(1)D1.x(2)D1");
    }

    #[test]
    fn tensors_with_t() {
        let ring = TPolyRing::quotient(PrimeField::new(3).unwrap(), crate::ring::PrimeFieldElem(1))
            .unwrap();
        let alg = Uea::restricted(LieAlgebra::jacobson_witt(3, 1).unwrap(), ring).unwrap();
        let text = "1 (x) x(1)D1 + x(1)D1 (x) 1 + 2*x(1)D1 (x) x(2)D1*t";
        let t = parse_tensor(text, &alg, 2).unwrap();
        assert_eq!(format_tensor(&t), text);
        assert_eq!(parse_tensor(&format_tensor(&t), &alg, t.arity()).unwrap(), t);
        let c = parse_element("2*t^2 + t", &alg).unwrap();
        assert_eq!(format_element(&c), "1*t + 2*1*t^2");
    }

    #[test]
    fn rejects_bad_input() {
        let ring = PrimeField::new(3).unwrap();
        let alg = Uea::restricted(LieAlgebra::jacobson_witt(3, 1).unwrap(), ring).unwrap();
        assert!(matches!(
            parse_element("x(1)D1^3", &alg),
            Err(GrammarError::ExponentRange { .. })
        ));
        assert!(parse_element("1/3*x(1)D1", &alg).is_err());
        assert!(parse_element("x(3)D1", &alg).is_err());
        assert!(parse_element("x(1,0)D1", &alg).is_err());
        assert!(parse_element("x(1)D1 +", &alg).is_err());
        assert!(parse_element("x(1)D1 (x) 1 + x(1)D1", &alg).is_err());
        assert!(parse_element("x(1)D1*t", &alg).is_err());
    }
}
