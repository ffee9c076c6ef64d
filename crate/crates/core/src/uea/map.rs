use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Element, Monomial, Tensor, Uea, UeaError};
use crate::liealg::BasisDeriv;
use crate::ring::{Ring, RingError};

/// Image of one generator under an algebra map: zero or a scaled generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GenImage<E> {
    Zero,
    Scaled(BasisDeriv, E),
}

struct MonomialMap<'a, R: Ring, S: Ring, F> {
    target: &'a Arc<Uea<S>>,
    gen: F,
    memo: BTreeMap<Monomial, Element<S>>,
    _source: std::marker::PhantomData<R>,
}

impl<'a, R: Ring, S: Ring, F: Fn(BasisDeriv) -> GenImage<S::Elem>> MonomialMap<'a, R, S, F> {
    fn image(&mut self, m: &Monomial) -> Result<Element<S>, UeaError> {
        if let Some(hit) = self.memo.get(m) {
            return Ok(hit.clone());
        }
        let mut scale = self.target.ring().one();
        let mut word = Vec::with_capacity(m.degree() as usize);
        let mut vanishes = false;
        for g in m.word() {
            match (self.gen)(g) {
                GenImage::Zero => {
                    vanishes = true;
                    break;
                }
                GenImage::Scaled(b, c) => {
                    scale = self.target.ring().mul(&scale, &c);
                    word.push(b);
                }
            }
        }
        let out = if vanishes {
            self.target.zero()
        } else {
            self.target.word(&word)?.scale(&scale)
        };
        self.memo.insert(m.clone(), out.clone());
        Ok(out)
    }
}

/// Applies the algebra map determined by a coefficient map and generator
/// images. Monomials are sent to the product of their letters' images, taken
/// in word order and renormalized in the target.
pub fn map_element<R: Ring, S: Ring>(
    x: &Element<R>,
    target: &Arc<Uea<S>>,
    coeff: impl Fn(&R::Elem) -> Result<S::Elem, RingError>,
    gen: impl Fn(BasisDeriv) -> GenImage<S::Elem>,
) -> Result<Element<S>, UeaError> {
    let mut images = MonomialMap {
        target,
        gen,
        memo: BTreeMap::new(),
        _source: std::marker::PhantomData::<R>,
    };
    let mut out = target.zero();
    for (m, c) in x.terms() {
        let c = coeff(c)?;
        if target.ring().is_zero(&c) {
            continue;
        }
        out = &out + &images.image(m)?.scale(&c);
    }
    Ok(out)
}

/// [`map_element`] applied to every slot of a tensor.
pub fn map_tensor<R: Ring, S: Ring>(
    x: &Tensor<R>,
    target: &Arc<Uea<S>>,
    coeff: impl Fn(&R::Elem) -> Result<S::Elem, RingError>,
    gen: impl Fn(BasisDeriv) -> GenImage<S::Elem>,
) -> Result<Tensor<S>, UeaError> {
    let mut images = MonomialMap {
        target,
        gen,
        memo: BTreeMap::new(),
        _source: std::marker::PhantomData::<R>,
    };
    let mut out = Tensor::zero(target, x.arity());
    for (key, c) in x.terms() {
        let c = coeff(c)?;
        if target.ring().is_zero(&c) {
            continue;
        }
        let mut parts = Vec::with_capacity(key.len());
        for m in key {
            parts.push(images.image(m)?);
        }
        let refs: Vec<&Element<S>> = parts.iter().collect();
        let piece = if refs.is_empty() {
            Tensor::one(target, 0)
        } else {
            Tensor::pure(&refs)?
        };
        out = &out + &piece.scale(&c);
    }
    Ok(out)
}
