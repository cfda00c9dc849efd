//! Exact computations on the attractor `E` of the iterated function system
//!
//! ```text
//! f_0(x) = x / b,   f_1(x) = (x + 1) / b,   f_{b+1}(x) = (x + b + 1) / b,   b >= 3
//! ```
//!
//! The system has a complete overlap (`f_0 ∘ f_{b+1} = f_1 ∘ f_1`), which is what
//! makes codings non-unique and the geometry interesting. Everything here is
//! computed with exact rationals unless a routine explicitly returns an
//! [`Enclosure`].
//!
//! The geometric core ([`Beta`], [`AffineMap`], [`Interval`], [`IntervalSet`],
//! [`geometry`], [`codings::eval_coding`], [`spectrum`]) is generic over a
//! [`Scalar`]; the aliases below pick the exact instantiation, which is what
//! the decision procedures ([`membership`], [`embedding`]) require.

pub mod codings;
pub mod embedding;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod map;
pub mod membership;
pub mod scalar;
pub mod spectrum;
pub mod symbolic;

pub use codings::{CodingCount, EPCoding};
pub use error::{Error, Result};
pub use geometry::Beta;
pub use interval::{Interval, IntervalSet};
pub use map::AffineMap;
pub use membership::Membership;
pub use scalar::{fmt_rat, parse_rat, Scalar};
pub use symbolic::poly::{CubicPoly, Enclosure};
pub use symbolic::{Digit, TransitionMatrix, Word};

/// Arbitrary-precision rational; the default scalar everywhere.
pub type Rat = num_rational::BigRational;

pub type RatBeta = Beta<Rat>;
pub type RatMap = AffineMap<Rat>;
pub type RatInterval = Interval<Rat>;
pub type RatIntervalSet = IntervalSet<Rat>;

pub type Beta64 = Beta<f64>;
pub type Map64 = AffineMap<f64>;
pub type Interval64 = Interval<f64>;
pub type IntervalSet64 = IntervalSet<f64>;

/// Exact base `num/den`. Fails with [`Error::ValueBelowThree`] below 3.
pub fn make_beta(num: i64, den: i64) -> Result<RatBeta> {
    Beta::from_ratio(num, den)
}
