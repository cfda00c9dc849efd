//! Words over the alphabet `{0, 1, β+1}`, the subshifts of finite type `X_A`
//! (forbidden `0(β+1)`) and `X_B` (forbidden `11` and `0(β+1)`), and the
//! dimension numbers derived from their transition matrices.

mod dimension;
mod matrix;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use dimension::{dimension, measure_upper_bound};
pub use matrix::TransitionMatrix;

/// Letter of the alphabet. Ordered `Zero < One < BetaPlusOne`; this order fixes
/// every "lexicographically smallest" choice in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digit {
    Zero,
    One,
    /// The digit `β+1`, written `B`.
    BetaPlusOne,
}

impl Digit {
    pub const ALL: [Digit; 3] = [Digit::Zero, Digit::One, Digit::BetaPlusOne];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Digit::Zero => '0',
            Digit::One => '1',
            Digit::BetaPlusOne => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Digit::Zero),
            '1' => Some(Digit::One),
            'B' | 'b' => Some(Digit::BetaPlusOne),
            _ => None,
        }
    }
}

/// Finite word over the alphabet; may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All `3^n` words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut k| {
            let mut v = vec![Digit::Zero; n];
            for slot in v.iter_mut().rev() {
                *slot = Digit::ALL[k % 3];
                k /= 3;
            }
            Word(v)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                Digit::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unexpected digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<&[Digit]> for Word {
    fn from(d: &[Digit]) -> Self {
        Word(d.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parse_display() {
        let w: Word = " 1 0B ".parse().unwrap();
        assert_eq!(w.to_string(), "10B");
        assert!("102".parse::<Word>().is_err());
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let words: Vec<String> = Word::all_of_length(2).map(|w| w.to_string()).collect();
        assert_eq!(
            words,
            ["00", "01", "0B", "10", "11", "1B", "B0", "B1", "BB"]
        );
        assert_eq!(Word::all_of_length(0).count(), 1);
    }
}
