//! Eventually periodic codings `(d_i)` of points `x = Σ d_i β^(−i)`, their
//! evaluation, and the multiplicity of codings produced by the identity
//! `f_{0(β+1)} = f_{11}`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::Beta;
use crate::scalar::Scalar;
use crate::symbolic::{Digit, TransitionMatrix, Word};

/// Digits past the requested depth that [`enumerate_codings`] rewrites before
/// cutting. A rewrite at `(k, k+1)` can change digit `k − 1` only through
/// `1 0(β+1) → 1 11 → 0(β+1) 1`, so two extra digits already capture every
/// effect on the visible prefix; one more is kept as margin.
pub const ENUMERATION_LOOKAHEAD: usize = 3;

/// `preperiod · period^∞` in canonical form: the period is primitive and the
/// preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EPCoding {
    preperiod: Word,
    period: Word,
}

impl EPCoding {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("period must be nonempty".into()));
        }
        let mut period = period.0;
        let n = period.len();
        if let Some(p) = (1..n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| period.chunks(p).all(|c| c == &period[..p]))
        {
            period.truncate(p);
        }
        let mut pre = preperiod.0;
        while pre.last().is_some() && pre.last() == period.last() {
            pre.pop();
            period.rotate_right(1);
        }
        Ok(Self {
            preperiod: Word(pre),
            period: Word(period),
        })
    }

    /// `d^∞`.
    pub fn constant(d: Digit) -> Self {
        Self {
            preperiod: Word::empty(),
            period: Word(vec![d]),
        }
    }

    /// `w 0^∞`, the coding of `f_w(0)`.
    pub fn left_end(w: &Word) -> Self {
        Self::new(w.clone(), Word(vec![Digit::Zero])).expect("nonempty period")
    }

    /// `w (β+1)^∞`, the coding of `f_w(γ)`.
    pub fn right_end(w: &Word) -> Self {
        Self::new(w.clone(), Word(vec![Digit::BetaPlusOne])).expect("nonempty period")
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn digit_at(&self, i: usize) -> Digit {
        let pre = self.preperiod.len();
        if i < pre {
            self.preperiod.0[i]
        } else {
            self.period.0[(i - pre) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word((0..len).map(|i| self.digit_at(i)).collect())
    }

    /// Apply `11 → 0(β+1)` or `0(β+1) → 11` at positions `(i, i+1)`, if one
    /// of the two blocks sits there.
    pub fn rewrite_at(&self, i: usize) -> Option<Self> {
        let swapped = swap_block(self.digit_at(i), self.digit_at(i + 1))?;
        let pre = self.preperiod.len();
        let per = self.period.len();
        let mut len = pre;
        while len < i + 2 {
            len += per;
        }
        let mut head = self.prefix(len).0;
        head[i] = swapped.0;
        head[i + 1] = swapped.1;
        Some(Self::new(Word(head), self.period.clone()).expect("nonempty period"))
    }
}

fn swap_block(a: Digit, b: Digit) -> Option<(Digit, Digit)> {
    match (a, b) {
        (Digit::One, Digit::One) => Some((Digit::Zero, Digit::BetaPlusOne)),
        (Digit::Zero, Digit::BetaPlusOne) => Some((Digit::One, Digit::One)),
        _ => None,
    }
}

fn is_branch_block(a: Digit, b: Digit) -> bool {
    swap_block(a, b).is_some()
}

impl fmt::Display for EPCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.preperiod, self.period)
    }
}

/// Grammar: `[digits]|[digits]` over `0`, `1`, `B`, whitespace ignored;
/// `11|B` is `11(β+1)^∞`, `|0B` is `(0(β+1))^∞`.
impl FromStr for EPCoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pre, per) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("coding {s:?} has no '|'")))?;
        if per.contains('|') {
            return Err(Error::Parse(format!("coding {s:?} has more than one '|'")));
        }
        Self::new(pre.parse()?, per.parse()?)
    }
}

/// Number of codings of a point as produced by the branch-block scan in
/// [`count_codings`]: `Finite(m)` stands for exactly `2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodingCount {
    Finite(u32),
    Continuum,
}

impl CodingCount {
    /// `2^m`, or `None` for a continuum.
    pub fn codings(&self) -> Option<BigUint> {
        match *self {
            CodingCount::Finite(m) => Some(BigUint::one() << m),
            CodingCount::Continuum => None,
        }
    }
}

impl fmt::Display for CodingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.codings() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "continuum"),
        }
    }
}

/// `Σ d_i β^(−i)` in closed form: the preperiod sum plus the period sum
/// divided by `1 − β^(−p)`, shifted past the preperiod.
pub fn eval_coding<S: Scalar>(beta: &Beta<S>, c: &EPCoding) -> S {
    let inv = beta.value().recip();
    let partial = |w: &Word| -> S {
        let mut acc = S::zero();
        let mut scale = inv.clone();
        for &d in w.digits() {
            acc = acc + beta.digit_value(d) * scale.clone();
            scale = scale * inv.clone();
        }
        acc
    };
    let head = partial(&c.preperiod);
    let cycle = partial(&c.period) / (S::one() - beta.inv_pow(c.period.len()));
    head + cycle * beta.inv_pow(c.preperiod.len())
}

/// Branch-block scan: find the first `11` or `0(β+1)`, consume those two
/// digits, count one branching, repeat on the tail. A tail position that
/// recurs means infinitely many branchings (`Continuum`).
///
/// Independent of `β`. The scan counts disjoint branch blocks; when blocks
/// overlap (`111`, `0(β+1)1`, ...) the true number of codings is larger than
/// `2^m` and is not a power of two. [`enumerate_codings`] gives the exact
/// prefixes in that case.
pub fn count_codings(c: &EPCoding) -> CodingCount {
    let pre = c.preperiod.len();
    let per = c.period.len();
    let mut pos = 0usize;
    let mut m = 0u32;
    let mut seen_tail: HashSet<usize> = HashSet::new();
    loop {
        if pos >= pre && !seen_tail.insert((pos - pre) % per) {
            return CodingCount::Continuum;
        }
        let horizon = pos.max(pre) + per;
        match (pos..horizon).find(|&i| is_branch_block(c.digit_at(i), c.digit_at(i + 1))) {
            None => return CodingCount::Finite(m),
            Some(i) => {
                m += 1;
                pos = i + 2;
            }
        }
    }
}

/// Closure of a finite word under `11 ↔ 0(β+1)` at every position.
pub fn rewrite_closure(w: &Word) -> BTreeSet<Word> {
    let mut seen: HashSet<Vec<Digit>> = HashSet::new();
    let mut stack = vec![w.0.clone()];
    seen.insert(w.0.clone());
    while let Some(u) = stack.pop() {
        for i in 0..u.len().saturating_sub(1) {
            if let Some((a, b)) = swap_block(u[i], u[i + 1]) {
                let mut v = u.clone();
                v[i] = a;
                v[i + 1] = b;
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
    }
    seen.into_iter().map(Word).collect()
}

/// Length-`depth` prefixes of all codings reachable from `c` by
/// value-preserving rewrites. The prefix is extended by
/// [`ENUMERATION_LOOKAHEAD`] digits before rewriting and cut afterwards, so
/// rewrites straddling the cut are not lost.
///
/// Grows exponentially in `depth` when `c` has a continuum of codings.
pub fn enumerate_codings(c: &EPCoding, depth: usize) -> BTreeSet<Word> {
    let window = c.prefix(depth + ENUMERATION_LOOKAHEAD);
    rewrite_closure(&window)
        .into_iter()
        .map(|w| Word(w.0[..depth].to_vec()))
        .collect()
}

/// Whether `c` avoids `11` and `0(β+1)` everywhere, i.e. lies in `X_B`.
pub fn is_unique(c: &EPCoding) -> bool {
    let span = c.preperiod.len() + c.period.len() + 1;
    TransitionMatrix::matrix_b().admissible(&c.prefix(span))
}

/// A point of `Λ_{n,m}`: `prefix (0(β+1))^m (β+1)^∞`, where `prefix` is an
/// `X_B`-admissible word of length `n` ending in `β+1`. With `None` the
/// lexicographically smallest such prefix is used.
pub fn lambda_sample(n: usize, m: usize, prefix: Option<&Word>) -> Result<EPCoding> {
    let b = TransitionMatrix::matrix_b();
    let valid = |w: &Word| {
        w.len() == n && w.digits().last() == Some(&Digit::BetaPlusOne) && b.admissible(w)
    };
    let prefix = match prefix {
        Some(w) => {
            if !valid(w) {
                let reason = if w.len() != n {
                    format!("length {} differs from n = {n}", w.len())
                } else if w.digits().last() != Some(&Digit::BetaPlusOne) {
                    "must end in B".to_string()
                } else {
                    "contains a forbidden block 11 or 0B".to_string()
                };
                return Err(Error::InvalidPrefix {
                    prefix: w.to_string(),
                    reason,
                });
            }
            w.clone()
        }
        None => {
            if n == 0 {
                return Err(Error::InvalidPrefix {
                    prefix: String::new(),
                    reason: "n must be at least 1".into(),
                });
            }
            Word::all_of_length(n)
                .find(valid)
                .expect("B^n is always admissible")
        }
    };
    let mut head = prefix.0;
    for _ in 0..m {
        head.push(Digit::Zero);
        head.push(Digit::BetaPlusOne);
    }
    EPCoding::new(Word(head), Word(vec![Digit::BetaPlusOne]))
}
