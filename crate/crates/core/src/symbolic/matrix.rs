use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::poly::CubicPoly;
use super::{Digit, Word};
use crate::error::{Error, Result};

/// 3×3 zero/one matrix indexed by `(0, 1, β+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    entries: [[u8; 3]; 3],
}

impl TransitionMatrix {
    pub fn new(entries: [[u8; 3]; 3]) -> Result<Self> {
        if entries.iter().flatten().any(|&e| e > 1) {
            return Err(Error::Parse(
                "transition matrix entries must be 0 or 1".into(),
            ));
        }
        Ok(Self { entries })
    }

    /// Forbidden block `0(β+1)` only; `π(X_A) = E`.
    pub fn matrix_a() -> Self {
        Self {
            entries: [[1, 1, 0], [1, 1, 1], [1, 1, 1]],
        }
    }

    /// Forbidden blocks `11` and `0(β+1)`; `X_B` is the set of unique codings.
    pub fn matrix_b() -> Self {
        Self {
            entries: [[1, 1, 0], [1, 0, 1], [1, 1, 1]],
        }
    }

    pub fn all_ones() -> Self {
        Self {
            entries: [[1; 3]; 3],
        }
    }

    pub fn entries(&self) -> [[u8; 3]; 3] {
        self.entries
    }

    pub fn entry(&self, from: Digit, to: Digit) -> u8 {
        self.entries[from.index()][to.index()]
    }

    pub fn allows(&self, from: Digit, to: Digit) -> bool {
        self.entry(from, to) == 1
    }

    pub fn admissible(&self, w: &Word) -> bool {
        w.digits().windows(2).all(|p| self.allows(p[0], p[1]))
    }

    pub fn row_sums(&self) -> [u8; 3] {
        self.entries.map(|r| r.iter().sum())
    }

    /// Number of admissible words of length `n`: the entry sum of `M^(n-1)`.
    /// `n = 0` counts the empty word.
    pub fn count_words(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        // row vector of per-final-letter counts, advanced n-1 times
        let mut v: [BigUint; 3] = [BigUint::one(), BigUint::one(), BigUint::one()];
        for _ in 1..n {
            let mut next: [BigUint; 3] = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
            for (i, vi) in v.iter().enumerate() {
                for (j, slot) in next.iter_mut().enumerate() {
                    if self.entries[i][j] == 1 {
                        *slot += vi;
                    }
                }
            }
            v = next;
        }
        v.into_iter().sum()
    }

    /// `det(xI − M)`, monic with integer coefficients.
    pub fn char_poly(&self) -> CubicPoly {
        let m = self.entries.map(|r| r.map(i64::from));
        let trace = m[0][0] + m[1][1] + m[2][2];
        let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CubicPoly::monic(-trace, minors, -det)
    }
}
