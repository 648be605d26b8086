//! Counting fingerprint tuples: the exact count and the exponential bound.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::rational::{self, Rational};

/// Relative slack added to the floating-point bound so that rounding can
/// only make it larger.
pub const UPWARD: f64 = 1e-12;

/// `exp{sθn(1 + log(1/θ))}`, rounded up by a relative `1e-12`.
pub fn entropy_bound(s: u64, theta: &Rational, n: u64) -> Result<f64> {
    if !theta.is_positive() || *theta > Rational::one() {
        return invalid("theta must lie in (0, 1]");
    }
    let t = rational::to_f64(theta);
    let exponent = s as f64 * t * n as f64 * (1.0 - t.ln());
    Ok(exponent.exp() * (1.0 + UPWARD))
}

/// Number of `s`-tuples of subsets of `[n]` with total size at most `cap`:
/// `Σ_{j <= cap} C(ns, j)`, the partial sums of `(1 + x)^{ns}`.
pub fn count_tuples_exact(s: u64, cap: u64, n: u64) -> BigInt {
    let m = n * s;
    let mut term = BigInt::one();
    let mut total = BigInt::zero();
    for j in 0..=cap.min(m) {
        if j > 0 {
            term = term * BigInt::from(m - j + 1) / BigInt::from(j);
        }
        total += &term;
    }
    total
}

/// `count_tuples_exact(s, ⌊sθn⌋, n) <= entropy_bound(s, θ, n)`, compared
/// exactly against the integer part of the (upward-rounded) bound.
pub fn entropy_holds(s: u64, theta: &Rational, n: u64) -> Result<bool> {
    let bound = entropy_bound(s, theta, n)?;
    let cap = (theta * rational::from_u64(s * n)).floor().to_integer();
    let cap: u64 = num_traits::ToPrimitive::to_u64(&cap).expect("small cap");
    let count = count_tuples_exact(s, cap, n);
    if bound.is_infinite() {
        return Ok(true);
    }
    let floor = BigInt::from_f64(bound.floor()).expect("finite bound");
    Ok(count <= floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn spec_values() {
        assert_eq!(count_tuples_exact(1, 10, 10), BigInt::from(1024));
        assert_eq!(count_tuples_exact(1, 1, 5), BigInt::from(6));
        assert_eq!(count_tuples_exact(2, 2, 3), BigInt::from(22));
        let b = entropy_bound(1, &ratio(1, 1), 10).unwrap();
        assert!((b - 22026.465794806718).abs() < 1e-6);
        assert!(entropy_holds(2, &ratio(1, 2), 8).unwrap());
        assert!(entropy_bound(1, &ratio(0, 1), 3).is_err());
        assert!(entropy_bound(1, &ratio(3, 2), 3).is_err());
    }

    #[test]
    fn small_theta_tends_to_one() {
        let b = entropy_bound(1, &ratio(1, 1_000_000), 10).unwrap();
        assert!(b > 1.0 && b < 1.01);
        assert_eq!(count_tuples_exact(1, 0, 10), BigInt::one());
    }
}
