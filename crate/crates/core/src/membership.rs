//! Deciding `x ∈ E` for rational `x`.
//!
//! The search runs the inverse branches `x ↦ βx − d` level by level, keeping
//! only states inside `Δ = [0, γ]`. The level-`k` frontier is empty exactly
//! when `x ∉ Δ_k`. Two distinct states at one level differ by a nonzero sum
//! `Σ e_i β^i` with `e_i ∈ Ω − Ω`, which has modulus at least 1, so a frontier
//! never holds more than three states.
//!
//! For integer `β` every state is `a/q` with the denominator `q` of `x`, so
//! frontiers range over a finite set and must eventually repeat; the answer
//! is then exact. For other rational `β` the search is cut off at a depth.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::geometry::Beta;
use crate::symbolic::Digit;
use crate::Rat;

/// Default search depth for non-integer bases.
pub const DEFAULT_MAX_DEPTH: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    In,
    Out,
    /// Search stopped at this depth without a verdict.
    Unknown(usize),
}

/// Membership verdict plus the level at which it was settled: for
/// [`Membership::Out`], the smallest `k` with `x ∉ Δ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Membership,
    pub level: usize,
}

/// Points outside `[0, γ]` are `Out`, not an error.
pub fn decide_membership(beta: &Beta, x: &Rat, max_depth: usize) -> Membership {
    decide(beta, x, max_depth).verdict
}

pub fn decide(beta: &Beta, x: &Rat, max_depth: usize) -> Decision {
    let gamma = beta.gamma();
    let in_hull = |y: &Rat| !y.is_negative() && y <= gamma;
    if !in_hull(x) {
        return Decision {
            verdict: Membership::Out,
            level: 0,
        };
    }
    let digits: Vec<Rat> = Digit::ALL.iter().map(|&d| beta.digit_value(d)).collect();
    let exact = beta.is_integer();
    let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
    let mut frontier = vec![x.clone()];
    let mut level = 0;
    loop {
        if frontier.iter().any(|y| y.is_zero() || y == gamma) {
            return Decision {
                verdict: Membership::In,
                level,
            };
        }
        if seen.insert(frontier.clone(), level).is_some() {
            // the frontier sequence is now periodic and never empties
            return Decision {
                verdict: Membership::In,
                level,
            };
        }
        if !exact && level >= max_depth {
            return Decision {
                verdict: Membership::Unknown(level),
                level,
            };
        }
        let mut next: Vec<Rat> = Vec::with_capacity(3);
        for y in &frontier {
            let scaled = y * beta.value();
            for d in &digits {
                let z = &scaled - d;
                if in_hull(&z) {
                    next.push(z);
                }
            }
        }
        next.sort();
        next.dedup();
        level += 1;
        if next.is_empty() {
            return Decision {
                verdict: Membership::Out,
                level,
            };
        }
        frontier = next;
    }
}
