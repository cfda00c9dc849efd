//! The spectrum `ℓ_β = inf { |Σ_{i<n} d_i β^i| ≠ 0 : d_i ∈ Ω − Ω }` at
//! truncated length, by branch and bound from the most significant digit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Beta;
use crate::scalar::Scalar;

/// One element of `Ω − Ω = {0, ±1, ±β, ±(β+1)}`, kept symbolic so a vector
/// can be re-evaluated at any base. The declaration order is the tie-break
/// order of the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectrumDigit {
    Zero,
    PlusOne,
    MinusOne,
    PlusBeta,
    MinusBeta,
    PlusBetaPlusOne,
    MinusBetaPlusOne,
}

impl SpectrumDigit {
    pub const ALL: [SpectrumDigit; 7] = [
        SpectrumDigit::Zero,
        SpectrumDigit::PlusOne,
        SpectrumDigit::MinusOne,
        SpectrumDigit::PlusBeta,
        SpectrumDigit::MinusBeta,
        SpectrumDigit::PlusBetaPlusOne,
        SpectrumDigit::MinusBetaPlusOne,
    ];

    pub const POSITIVE: [SpectrumDigit; 3] = [
        SpectrumDigit::PlusOne,
        SpectrumDigit::PlusBeta,
        SpectrumDigit::PlusBetaPlusOne,
    ];

    pub fn value<S: Scalar>(self, beta: &Beta<S>) -> S {
        let b = beta.value().clone();
        match self {
            SpectrumDigit::Zero => S::zero(),
            SpectrumDigit::PlusOne => S::one(),
            SpectrumDigit::MinusOne => -S::one(),
            SpectrumDigit::PlusBeta => b,
            SpectrumDigit::MinusBeta => -b,
            SpectrumDigit::PlusBetaPlusOne => b + S::one(),
            SpectrumDigit::MinusBetaPlusOne => -(b + S::one()),
        }
    }

    /// `0`, `+1`, `-1`, `+b`, `-b`, `+B`, `-B` (with `b = β`, `B = β+1`).
    pub fn token(self) -> &'static str {
        match self {
            SpectrumDigit::Zero => "0",
            SpectrumDigit::PlusOne => "+1",
            SpectrumDigit::MinusOne => "-1",
            SpectrumDigit::PlusBeta => "+b",
            SpectrumDigit::MinusBeta => "-b",
            SpectrumDigit::PlusBetaPlusOne => "+B",
            SpectrumDigit::MinusBetaPlusOne => "-B",
        }
    }
}

/// Coefficients `d_0, d_1, …` of `Σ d_i β^i`; index 0 is the constant term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumDigitVector(Vec<SpectrumDigit>);

impl SpectrumDigitVector {
    pub fn new(coeffs: Vec<SpectrumDigit>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("digit vector must be nonempty".into()));
        }
        Ok(Self(coeffs))
    }

    pub fn coeffs(&self) -> &[SpectrumDigit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Tokens separated by spaces, constant term first.
impl fmt::Display for SpectrumDigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self.0.iter().map(|d| d.token()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for SpectrumDigitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split_whitespace()
            .map(|t| {
                SpectrumDigit::ALL
                    .into_iter()
                    .find(|d| d.token() == t)
                    .ok_or_else(|| Error::Parse(format!("unknown spectrum digit {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

/// Exact `Σ d_i β^i` by Horner's rule.
pub fn eval_digit_vector<S: Scalar>(beta: &Beta<S>, v: &SpectrumDigitVector) -> S {
    v.0.iter().rev().fold(S::zero(), |acc, d| {
        acc * beta.value().clone() + d.value(beta)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<S> {
    pub min_value: S,
    pub witness: SpectrumDigitVector,
    pub length: usize,
    /// Entry `L − 1` is the minimum over vectors whose leading nonzero
    /// coefficient sits at index `L − 1`.
    pub per_length: Vec<S>,
}

struct Search<'a, S> {
    beta: &'a Beta<S>,
    powers: Vec<S>,
    /// `rest[k] = (β+1) Σ_{i<k} β^i`, the most the low `k` digits can move
    /// the sum.
    rest: Vec<S>,
}

impl<'a, S: Scalar> Search<'a, S> {
    fn new(beta: &'a Beta<S>, len: usize) -> Self {
        let mut powers = vec![S::one()];
        let mut rest = vec![S::zero()];
        let top = beta.digit_value(crate::symbolic::Digit::BetaPlusOne);
        for k in 1..=len {
            let p = powers[k - 1].clone();
            rest.push(rest[k - 1].clone() + top.clone() * p.clone());
            powers.push(p * beta.value().clone());
        }
        Self { beta, powers, rest }
    }

    /// Smallest nonzero `|Σ|` strictly below `bound` among vectors of exactly
    /// `len` coefficients with a positive leading one, visiting candidates
    /// in lexicographic tag order from the most significant index; the first
    /// minimiser found is kept.
    fn exact_length(&self, len: usize, bound: Option<S>) -> Option<(S, Vec<SpectrumDigit>)> {
        let mut best: Option<(S, Vec<SpectrumDigit>)> = None;
        let mut bound = bound;
        let mut digits = Vec::with_capacity(len);
        for lead in SpectrumDigit::POSITIVE {
            digits.push(lead);
            let partial = lead.value(self.beta) * self.powers[len - 1].clone();
            self.descend(len - 1, partial, &mut digits, &mut bound, &mut best);
            digits.pop();
        }
        best.map(|(v, mut d)| {
            d.reverse();
            (v, d)
        })
    }

    fn descend(
        &self,
        k: usize,
        partial: S,
        digits: &mut Vec<SpectrumDigit>,
        bound: &mut Option<S>,
        best: &mut Option<(S, Vec<SpectrumDigit>)>,
    ) {
        if k == 0 {
            let a = partial.abs();
            if !a.is_zero() && bound.as_ref().is_none_or(|b| a < *b) {
                *bound = Some(a.clone());
                *best = Some((a, digits.clone()));
            }
            return;
        }
        if let Some(b) = bound.as_ref() {
            // ties are cut too: anything found below here comes later in
            // the visiting order
            if partial.abs() - self.rest[k].clone() >= *b {
                return;
            }
        }
        for d in SpectrumDigit::ALL {
            digits.push(d);
            let next = partial.clone() + d.value(self.beta) * self.powers[k - 1].clone();
            self.descend(k - 1, next, digits, bound, best);
            digits.pop();
        }
    }
}

/// Minimum of `|Σ_{i<L} d_i β^i| ≠ 0` over `1 ≤ L ≤ max_len`. Only vectors
/// with a positive leading coefficient are searched (negation is a
/// symmetry); equal minima go to the shorter vector, then to the first in
/// lexicographic tag order from the most significant index.
pub fn spectrum_search<S: Scalar>(beta: &Beta<S>, max_len: usize) -> Result<SpectrumResult<S>> {
    if max_len == 0 {
        return Err(Error::Parse("maximum length must be at least 1".into()));
    }
    let search = Search::new(beta, max_len);
    let mut per_length = Vec::with_capacity(max_len);
    let mut best: Option<(S, Vec<SpectrumDigit>)> = None;
    for len in 1..=max_len {
        let (v, d) = search
            .exact_length(len, None)
            .expect("a positive leading digit alone gives a nonzero sum");
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v.clone(), d));
        }
        per_length.push(v);
    }
    let (min_value, coeffs) = best.expect("max_len ≥ 1");
    let length = coeffs.len();
    Ok(SpectrumResult {
        min_value,
        witness: SpectrumDigitVector(coeffs),
        length,
        per_length,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimCheck {
    /// Every nonzero sum with a nonzero top coefficient and fewer than
    /// `max_len + 1` coefficients has modulus at least 1.
    Verified {
        max_len: usize,
    },
    Counterexample(SpectrumDigitVector),
}

/// Checks `|Σ_{i=0}^{n} d_i β^i| ≥ 1` whenever the sum is nonzero and
/// `d_n ≠ 0`, for all `n < max_len`, by running the search with the bound 1.
pub fn verify_claim_induction<S: Scalar>(beta: &Beta<S>, max_len: usize) -> ClaimCheck {
    let search = Search::new(beta, max_len);
    for len in 1..=max_len {
        if let Some((_, d)) = search.exact_length(len, Some(S::one())) {
            return ClaimCheck::Counterexample(SpectrumDigitVector(d));
        }
    }
    ClaimCheck::Verified { max_len }
}
