use std::cmp::Ordering;
use std::fmt;

use crate::map::AffineMap;
use crate::scalar::Scalar;
use crate::Rat;

/// Interval with per-endpoint openness. `lo <= hi` always.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval<S = Rat> {
    lo: S,
    hi: S,
    lo_open: bool,
    hi_open: bool,
}

impl<S: Scalar> Interval<S> {
    /// Endpoints are swapped if given out of order.
    pub fn with_openness(lo: S, hi: S, lo_open: bool, hi_open: bool) -> Self {
        if hi < lo {
            Self {
                lo: hi,
                hi: lo,
                lo_open: hi_open,
                hi_open: lo_open,
            }
        } else {
            Self {
                lo,
                hi,
                lo_open,
                hi_open,
            }
        }
    }

    pub fn closed(lo: S, hi: S) -> Self {
        Self::with_openness(lo, hi, false, false)
    }

    pub fn open(lo: S, hi: S) -> Self {
        Self::with_openness(lo, hi, true, true)
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_open(&self) -> bool {
        self.lo_open && self.hi_open
    }

    pub fn length(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> S {
        (self.lo.clone() + self.hi.clone()) / S::from_i64(2)
    }

    pub fn contains(&self, x: &S) -> bool {
        let above = if self.lo_open {
            *x > self.lo
        } else {
            *x >= self.lo
        };
        let below = if self.hi_open {
            *x < self.hi
        } else {
            *x <= self.hi
        };
        above && below
    }

    /// Strict interior containment, ignoring openness flags.
    pub fn contains_in_interior(&self, x: &S) -> bool {
        *x > self.lo && *x < self.hi
    }

    /// Containment of `other` as a point set.
    pub fn contains_interval(&self, other: &Self) -> bool {
        let lo_ok = match other.lo.partial_cmp(&self.lo) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => !self.lo_open || other.lo_open,
            _ => false,
        };
        let hi_ok = match other.hi.partial_cmp(&self.hi) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => !self.hi_open || other.hi_open,
            _ => false,
        };
        lo_ok && hi_ok
    }
}

impl fmt::Display for Interval<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            crate::fmt_rat(&self.lo),
            crate::fmt_rat(&self.hi),
            if self.hi_open { ')' } else { ']' },
        )
    }
}

/// Finite union of disjoint closed intervals, sorted, with touching parts
/// merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet<S = Rat> {
    parts: Vec<Interval<S>>,
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Union of closed intervals given as `(lo, hi)` pairs in any order.
    pub fn from_closed<I>(pieces: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
    {
        let mut raw: Vec<Interval<S>> = pieces
            .into_iter()
            .map(|(a, b)| Interval::closed(a, b))
            .collect();
        raw.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal));
        let mut parts: Vec<Interval<S>> = Vec::with_capacity(raw.len());
        for iv in raw {
            match parts.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => parts.push(iv),
            }
        }
        Self { parts }
    }

    pub fn parts(&self) -> &[Interval<S>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_length(&self) -> S {
        self.parts
            .iter()
            .fold(S::zero(), |acc, iv| acc + iv.length())
    }

    pub fn contains_point(&self, x: &S) -> bool {
        // parts are sorted; binary search on the lower endpoints
        let idx = self.parts.partition_point(|iv| iv.lo <= *x);
        idx > 0 && self.parts[idx - 1].contains(x)
    }

    /// Whether every part of `other` lies inside a single part of `self`.
    pub fn contains_set(&self, other: &Self) -> bool {
        other.parts.iter().all(|iv| {
            let idx = self.parts.partition_point(|p| p.lo <= iv.lo);
            idx > 0 && self.parts[idx - 1].contains_interval(iv)
        })
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            let lo = S::max_of(a.lo.clone(), b.lo.clone());
            let hi = S::min_of(a.hi.clone(), b.hi.clone());
            if lo <= hi {
                out.push((lo, hi));
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_closed(out)
    }

    pub fn image(&self, map: &AffineMap<S>) -> Self {
        Self::from_closed(self.parts.iter().map(|iv| {
            let img = map.image(iv);
            (img.lo, img.hi)
        }))
    }

    /// Open gaps between consecutive parts.
    pub fn gaps(&self) -> Vec<Interval<S>> {
        self.parts
            .windows(2)
            .map(|w| Interval::open(w[0].hi.clone(), w[1].lo.clone()))
            .collect()
    }

    /// Convex hull `[min, max]`, if nonempty.
    pub fn hull(&self) -> Option<Interval<S>> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval::closed(first.lo.clone(), last.hi.clone()))
    }
}
