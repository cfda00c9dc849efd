//! Monic integer cubics, exact Sturm root counting, and bisection for the
//! largest real root.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rat;

/// `x³ + c2·x² + c1·x + c0`, stored leading coefficient first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicPoly {
    coeffs: [i64; 4],
}

impl CubicPoly {
    pub fn monic(c2: i64, c1: i64, c0: i64) -> Self {
        Self {
            coeffs: [1, c2, c1, c0],
        }
    }

    /// Leading first; `coeffs()[0] == 1`.
    pub fn coeffs(&self) -> [i64; 4] {
        self.coeffs
    }

    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, &c| acc * x.clone() + S::from_i64(c))
    }

    /// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²` with `a = 1`.
    pub fn discriminant(&self) -> BigInt {
        let [_, b, c, d] = self.coeffs.map(BigInt::from);
        BigInt::from(18) * &b * &c * &d - BigInt::from(4) * b.pow(3) * &d + b.pow(2) * c.pow(2)
            - BigInt::from(4) * c.pow(3)
            - BigInt::from(27) * d.pow(2)
    }

    /// Strict bound on the modulus of every root: `1 + max |c_i|`.
    pub fn cauchy_bound(&self) -> i64 {
        1 + self.coeffs[1..].iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    fn to_rat_poly(self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .rev()
                .map(|&c| Rat::from_i64(c))
                .collect(),
        )
    }

    /// Number of distinct real roots in `(lo, hi]` (Sturm). A simple root at
    /// `lo` is excluded, one at `hi` included.
    pub fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        let chain = sturm_chain(self.to_rat_poly());
        variations(&chain, lo).saturating_sub(variations(&chain, hi))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let c = Rat::from_i64(self.cauchy_bound());
        self.count_roots(&-c.clone(), &c)
    }
}

impl fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3")?;
        for (power, &c) in [2, 1, 0].iter().zip(&self.coeffs[1..]) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { '-' } else { '+' };
            let mag = c.abs();
            let body = match (power, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "x".to_string(),
                (1, m) => format!("{m}x"),
                (p, 1) => format!("x^{p}"),
                (p, m) => format!("{m}x^{p}"),
            };
            write!(f, " {sign} {body}")?;
        }
        Ok(())
    }
}

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<Rat>);

impl RatPoly {
    fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_i64(k as i64))
                .collect(),
        )
    }

    fn rem(&self, divisor: &Self) -> Self {
        let mut r = self.0.clone();
        let dd = divisor.degree();
        let lead = divisor.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap().clone() / &lead;
            for (k, c) in divisor.0.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }
}

fn sturm_chain(p: RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
    }
    chain
}

fn variations(chain: &[RatPoly], x: &Rat) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Closed float interval `[lo, hi]` known to contain the true value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// Encloses the exact rational interval, widened by a few ulps to absorb
    /// the rounding of the conversion.
    pub fn from_rats(lo: &Rat, hi: &Rat) -> Self {
        Self::new(lo.to_f64(), hi.to_f64()).widened(4.0 * f64::EPSILON)
    }

    pub fn value(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn err(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn widened(self, rel: f64) -> Self {
        let pad = |x: f64| x.abs() * rel + f64::MIN_POSITIVE;
        Self::new(self.lo - pad(self.lo), self.hi + pad(self.hi))
    }
}

/// Exact rational bracket of the largest real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralRadius {
    pub lo: Rat,
    pub hi: Rat,
}

impl SpectralRadius {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn enclosure(&self) -> Enclosure {
        Enclosure::from_rats(&self.lo, &self.hi)
    }
}

/// Default bracket width for spectral radii, `1e-12`.
pub fn default_tolerance() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u64.pow(12)))
}

/// Largest real root of `p`, searched in `[1, 3 + 1/8]` and bracketed to width
/// at most `tol` by exact Sturm-guided bisection. Integer roots are returned as
/// a degenerate bracket.
pub fn spectral_radius(p: &CubicPoly, tol: &Rat) -> Result<SpectralRadius> {
    let one = Rat::one();
    let mut lo = one.clone();
    let mut hi = Rat::from_i64(3) + Rat::new(1.into(), 8.into());
    let fail = |lo: &Rat, hi: &Rat| Error::NoRootInBracket {
        poly: p.to_string(),
        lo: crate::fmt_rat(lo),
        hi: crate::fmt_rat(hi),
    };
    if !tol.is_positive() {
        return Err(Error::Parse("tolerance must be positive".into()));
    }
    if p.eval(&lo).is_zero() {
        lo += Rat::new(1.into(), BigInt::from(1u64 << 20));
    }
    let top = Rat::from_i64(p.cauchy_bound());
    if p.count_roots(&hi, &top) != 0 || p.count_roots(&lo, &hi) == 0 {
        return Err(fail(&lo, &hi));
    }

    // rational roots of a monic integer polynomial are integers
    let mut c = p.coeffs();
    while c[3] == 0 && c.iter().any(|&x| x != 0) {
        c = [0, c[0], c[1], c[2]];
    }
    let last = c[3].abs();
    for k in (2..=3i64).rev() {
        let kr = Rat::from_i64(k);
        if kr > lo
            && kr <= hi
            && (last == 0 || last % k == 0)
            && p.eval(&kr).is_zero()
            && p.count_roots(&kr, &hi) == 0
        {
            return Ok(SpectralRadius {
                lo: kr.clone(),
                hi: kr,
            });
        }
    }

    let two = Rat::from_i64(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if p.count_roots(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SpectralRadius { lo, hi })
}

/// Whether the bracketed root dominates every other root in modulus.
///
/// Real roots: no root lies in `(−C, −lo]` (`C` the Cauchy bound). A complex
/// pair (negative discriminant) has `|z|² = |c0| / r`, so `|c0| ≤ lo³` suffices.
pub fn perron_dominant(p: &CubicPoly, r: &SpectralRadius) -> bool {
    let c = Rat::from_i64(p.cauchy_bound());
    if p.count_roots(&-c, &-r.lo.clone()) != 0 {
        return false;
    }
    if p.discriminant().is_negative() {
        let c0 = Rat::from_i64(p.coeffs()[3].abs());
        return c0 <= r.lo.powi(3);
    }
    true
}
