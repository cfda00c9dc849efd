use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ordered field the geometry is computed in.
///
/// Exact instantiations (`BigRational`, `Ratio<i64>`) make every comparison a
/// proof; the float instantiations exist for plotting and quick estimates.
pub trait Scalar: Clone + PartialOrd + Debug + Num + Signed {
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

macro_rules! float_scalar {
    ($($t:ty)*) => ($(
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    )*)
}

float_scalar!(f32 f64);

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `p/q` always, integers included (`2/1`).
pub fn fmt_rat(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`, surrounding whitespace ignored.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let x = parse_rat(" 14/4 ").unwrap();
        assert_eq!(fmt_rat(&x), "7/2");
        assert_eq!(fmt_rat(&parse_rat("2").unwrap()), "2/1");
        assert_eq!(fmt_rat(&parse_rat("-6/-4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/2").is_err());
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = BigRational::new(3.into(), 2.into());
        assert_eq!(x.powi(3), BigRational::new(27.into(), 8.into()));
        assert_eq!(2.0f64.powi(0), 1.0);
    }
}
