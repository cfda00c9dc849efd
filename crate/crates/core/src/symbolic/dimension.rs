use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::poly::{default_tolerance, spectral_radius, Enclosure};
use super::TransitionMatrix;
use crate::geometry::Beta;
use crate::scalar::Scalar;

/// `log r / log β` with the bracket of `r` carried through. Both logs are
/// monotone, so the endpoints of `r` map to endpoints of the result.
pub fn dimension<S: Scalar>(r: &Enclosure, beta: &Beta<S>) -> Enclosure {
    let lb = beta.value().to_f64().ln();
    Enclosure::new(r.lo.ln() / lb, r.hi.ln() / lb).widened(8.0 * f64::EPSILON)
}

/// Natural-cover upper bound `#B_n(X_A) · (γ β^(−n))^s` for `H^s(E)`,
/// with `s = log r_A / log β`.
pub fn measure_upper_bound<S: Scalar>(beta: &Beta<S>, n: usize) -> Enclosure {
    let poly = TransitionMatrix::matrix_a().char_poly();
    let r = spectral_radius(&poly, &default_tolerance())
        .expect("char poly of A has its Perron root in the search bracket");
    let s = dimension(&r.enclosure(), beta);
    let count = big_to_f64(&TransitionMatrix::matrix_a().count_words(n));
    let diam = beta.gamma().to_f64() / beta.value().to_f64().powi(n as i32);
    let a = count * diam.powf(s.lo);
    let b = count * diam.powf(s.hi);
    Enclosure::new(a.min(b), a.max(b)).widened(16.0 * f64::EPSILON)
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
