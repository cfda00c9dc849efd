use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::Scalar;
use crate::Rat;

/// `x ↦ scale·x + offset` with `scale ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap<S = Rat> {
    scale: S,
    offset: S,
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(scale: S, offset: S) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Self { scale, offset })
    }

    pub fn identity() -> Self {
        Self {
            scale: S::one(),
            offset: S::zero(),
        }
    }

    pub fn scale(&self) -> &S {
        &self.scale
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    pub fn apply(&self, x: &S) -> S {
        self.scale.clone() * x.clone() + self.offset.clone()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            scale: self.scale.clone() * inner.scale.clone(),
            offset: self.apply(&inner.offset),
        }
    }

    /// Exact inverse; always exists since the scale is nonzero.
    pub fn inverse(&self) -> Self {
        let scale = self.scale.recip();
        let offset = -(self.offset.clone() * scale.clone());
        Self { scale, offset }
    }

    /// Image of a closed interval; endpoints swap for negative scale.
    pub fn image(&self, iv: &Interval<S>) -> Interval<S> {
        let a = self.apply(iv.lo());
        let b = self.apply(iv.hi());
        if self.scale.is_negative() {
            Interval::with_openness(b, a, iv.hi_open(), iv.lo_open())
        } else {
            Interval::with_openness(a, b, iv.lo_open(), iv.hi_open())
        }
    }
}
