//! Small helpers for exact rational values shared across modules.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Formats a rational as `<signed-integer>/<positive-integer>` in lowest terms.
pub fn format_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`. The denominator must be positive.
pub fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid numerator `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid denominator `{den}`"))?;
    if d <= BigInt::zero() {
        return Err(format!("denominator must be positive, got `{den}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Exact `2^-e` as a rational.
pub fn pow2_neg(e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e as usize)
}

/// Distance from `v` to the closed interval `[lo, hi]`; zero inside.
pub fn dist_to_interval(v: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    if v < lo {
        lo - v
    } else if v > hi {
        v - hi
    } else {
        BigRational::zero()
    }
}

/// `f64` variant of [`dist_to_interval`].
pub fn dist_to_interval_f64(v: f64, lo: f64, hi: f64) -> f64 {
    if v < lo {
        lo - v
    } else if v > hi {
        v - hi
    } else {
        0.0
    }
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rational to nearest `f64` (via exact integer conversion of both parts).
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    let n = bigint_to_f64(q.numer());
    let d = bigint_to_f64(q.denom());
    if d.is_infinite() || n.is_infinite() {
        // scale both down so at least the magnitude survives
        let shift = (q.numer().bits().max(q.denom().bits()) as i64 - 900).max(0) as u64;
        let n = bigint_to_f64(&(q.numer() >> shift));
        let d = bigint_to_f64(&(q.denom() >> shift));
        return n / d;
    }
    n / d
}

fn bigint_to_f64(i: &BigInt) -> f64 {
    let mut v = 0.0f64;
    let (sign, digits) = i.to_u64_digits();
    for d in digits.iter().rev() {
        v = v * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num::bigint::Sign::Minus {
        -v
    } else {
        v
    }
}
