//! The three similitudes, their compositions, level-`n` basic intervals
//! `Δ_n` and the holes between them.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::map::AffineMap;
use crate::scalar::Scalar;
use crate::symbolic::{Digit, Word};
use crate::Rat;

/// The base `β ≥ 3` together with `γ_β = (β+1)/(β−1)`, the right end of the
/// convex hull `Δ = [0, γ_β]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Beta<S = Rat> {
    value: S,
    gamma: S,
}

impl<S: Scalar> Beta<S> {
    pub fn new(value: S) -> Result<Self> {
        // written so that NaN also fails
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(value >= S::from_i64(3)) {
            return Err(Error::ValueBelowThree(format!("{value:?}")));
        }
        let one = S::one();
        let gamma = (value.clone() + one.clone()) / (value.clone() - one);
        Ok(Self { value, gamma })
    }

    pub fn value(&self) -> &S {
        &self.value
    }

    pub fn gamma(&self) -> &S {
        &self.gamma
    }

    pub fn digit_value(&self, d: Digit) -> S {
        match d {
            Digit::Zero => S::zero(),
            Digit::One => S::one(),
            Digit::BetaPlusOne => self.value.clone() + S::one(),
        }
    }

    /// `Δ = [0, γ_β]`.
    pub fn hull(&self) -> Interval<S> {
        Interval::closed(S::zero(), self.gamma.clone())
    }

    /// `β^(−n)`.
    pub fn inv_pow(&self, n: usize) -> S {
        self.value.powi(n as u32).recip()
    }
}

impl Beta<Rat> {
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let v = Rat::new(BigInt::from(num), BigInt::from(den));
        if v < Rat::from_i64(3) {
            return Err(Error::ValueBelowThree(crate::fmt_rat(&v)));
        }
        Self::new(v)
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }
}

/// `f_d(x) = (x + d) / β`.
pub fn map_for_digit<S: Scalar>(beta: &Beta<S>, d: Digit) -> AffineMap<S> {
    let inv = beta.value().recip();
    AffineMap::new(inv.clone(), beta.digit_value(d) * inv).expect("1/β is nonzero")
}

/// `f_w = f_{w_1} ∘ … ∘ f_{w_n}`; scale `β^(−n)`, offset `Σ w_i β^(−i)`.
pub fn compose_word<S: Scalar>(beta: &Beta<S>, w: &Word) -> AffineMap<S> {
    w.digits()
        .iter()
        .rev()
        .fold(AffineMap::identity(), |acc, &d| {
            map_for_digit(beta, d).compose(&acc)
        })
}

/// One distinct level-`n` map `f_w`, identified by its offset (all level-`n`
/// maps share the scale `β^(−n)`).
#[derive(Debug, Clone, PartialEq)]
pub struct BasicMap<S = Rat> {
    pub offset: S,
    /// Lexicographically smallest word inducing this map.
    pub word: Word,
    /// Number of words of length `n` inducing this map.
    pub multiplicity: u64,
}

/// Distinct level-`n` maps sorted by offset, with identical maps (such as
/// `f_{0(β+1)} = f_{11}`) merged.
pub fn level_maps<S: Scalar>(beta: &Beta<S>, n: usize) -> Vec<BasicMap<S>> {
    let mut level = vec![BasicMap {
        offset: S::zero(),
        word: Word::empty(),
        multiplicity: 1,
    }];
    let inv = beta.value().recip();
    for _ in 0..n {
        let mut next: Vec<BasicMap<S>> = Vec::with_capacity(level.len() * 3);
        for m in &level {
            for d in Digit::ALL {
                let mut word = vec![d];
                word.extend_from_slice(m.word.digits());
                next.push(BasicMap {
                    offset: (beta.digit_value(d) + m.offset.clone()) * inv.clone(),
                    word: Word(word),
                    multiplicity: m.multiplicity,
                });
            }
        }
        next.sort_by(|a, b| a.offset.partial_cmp(&b.offset).unwrap_or(Ordering::Equal));
        let mut merged: Vec<BasicMap<S>> = Vec::with_capacity(next.len());
        for m in next {
            match merged.last_mut() {
                Some(last) if last.offset == m.offset => {
                    last.multiplicity += m.multiplicity;
                    if m.word < last.word {
                        last.word = m.word;
                    }
                }
                _ => merged.push(m),
            }
        }
        level = merged;
    }
    level
}

/// `Δ_n`, the merged union of all level-`n` basic intervals `f_w(Δ)`.
pub fn delta_level<S: Scalar>(beta: &Beta<S>, n: usize) -> IntervalSet<S> {
    let width = beta.gamma().clone() * beta.inv_pow(n);
    IntervalSet::from_closed(
        level_maps(beta, n)
            .into_iter()
            .map(|m| (m.offset.clone(), m.offset + width.clone())),
    )
}

/// Open gaps of `Δ_n` inside `Δ`, left to right. `n = 0` has none.
pub fn holes<S: Scalar>(beta: &Beta<S>, n: usize) -> Vec<Interval<S>> {
    delta_level(beta, n).gaps()
}

/// The largest hole `H = (f_1(γ), f_{β+1}(0))`.
pub fn main_hole<S: Scalar>(beta: &Beta<S>) -> Interval<S> {
    let f1 = map_for_digit(beta, Digit::One);
    let fb = map_for_digit(beta, Digit::BetaPlusOne);
    Interval::open(f1.apply(beta.gamma()), fb.apply(&S::zero()))
}
