//! Exact integer and rational arithmetic shared by every threshold
//! computation. All thresholds stay rational until a caller asks for floats.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Arbitrary-precision non-negative integer.
pub type BigNat = num_bigint::BigUint;
/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Binomial coefficient C(n, k) by the multiplicative recurrence
/// C(n, k) = C(n, k-1) * (n-k+1) / k, where every division is exact.
/// Total in k: out-of-range k (negative or above n) gives 0.
pub fn binomial(n: u64, k: i64) -> BigNat {
    if k < 0 || k as u64 > n {
        return BigNat::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigNat::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact ratio of two naturals, reduced to lowest terms.
/// Panics if `den` is zero; every caller divides by a positive binomial.
pub fn ratio(num: BigNat, den: BigNat) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Exact total order on rationals via integer cross-multiplication.
/// Never goes through floating point, so giant thresholds compare safely.
pub fn rational_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Nearest f64 to an exact rational, for reporting only. Magnitudes beyond
/// the f64 range saturate to 0 or infinity with the right sign.
pub fn ratio_to_f64(q: &Rational) -> f64 {
    match q.to_f64() {
        Some(f) => f,
        // to_f64 on a finite rational only fails outside the f64 range
        None => {
            if q.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Renders a rational as `num/den` in lowest terms, e.g. `30/59` or `1/1`.
pub fn format_ratio(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer into an exact rational.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => Some(Rational::from(s.trim().parse::<BigInt>().ok()?)),
    }
}
