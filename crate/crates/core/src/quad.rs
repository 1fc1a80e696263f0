//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Every value is `a + b*sqrt(2)` with rational `a`, `b` in lowest terms.
//! Ordering and equality are decided exactly, without rounding.

use crate::rat::{format_ratio, parse_ratio, ratio_to_f64};
use crate::real::Real;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational) -> QuadExt {
        QuadExt { a, b }
    }

    pub fn from_int(n: i64) -> QuadExt {
        QuadExt {
            a: BigRational::from(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    pub fn from_ratio(a: BigRational) -> QuadExt {
        QuadExt {
            a,
            b: BigRational::zero(),
        }
    }

    /// `sqrt(2)` itself.
    pub fn sqrt2() -> QuadExt {
        QuadExt {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn zero() -> QuadExt {
        Self::from_int(0)
    }

    pub fn one() -> QuadExt {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        sign_a_plus_b_sqrt2(&self.a, &self.b)
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> QuadExt {
        assert!(!self.is_zero(), "division by zero in Q(sqrt 2)");
        // 1/(a + b s) = (a - b s)/(a^2 - 2 b^2)
        let norm = &self.a * &self.a - BigRational::from(BigInt::from(2)) * &self.b * &self.b;
        QuadExt {
            a: &self.a / &norm,
            b: -(&self.b) / &norm,
        }
    }

    /// Exact floor as a big integer.
    pub fn floor(&self) -> BigInt {
        let mut f = BigInt::from(self.to_f64().floor() as i64);
        // correct the float estimate with exact comparisons
        loop {
            let lo = QuadExt::from_ratio(BigRational::from(f.clone()));
            let hi = QuadExt::from_ratio(BigRational::from(&f + 1));
            if *self < lo {
                f -= 1;
            } else if *self >= hi {
                f += 1;
            } else {
                return f;
            }
        }
    }

    /// Nearest `f64`, computed through an exact rational approximation of
    /// `sqrt 2` wide enough to survive cancellation between the two parts
    /// (the parts can be astronomically large while the value is tiny).
    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return ratio_to_f64(&self.a);
        }
        let bits = self
            .a
            .numer()
            .bits()
            .max(self.a.denom().bits())
            .max(self.b.numer().bits())
            .max(self.b.denom().bits())
            + 128;
        let q = BigInt::one() << bits;
        let p = BigInt::from((BigInt::from(2) * &q * &q).magnitude().sqrt());
        let approx = &self.a + &self.b * BigRational::new(p, q);
        ratio_to_f64(&approx)
    }

    pub fn to_real(&self, precision: usize) -> Real {
        let s = Real::from_u64(2, precision).sqrt();
        Real::from_ratio(&self.a, precision).add(&Real::from_ratio(&self.b, precision).mul(&s))
    }

    /// Serialized as an exact rational pair `{"a":"p/q","b":"p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "a": format_ratio(&self.a), "b": format_ratio(&self.b) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QuadExt, String> {
        let a = v
            .get("a")
            .and_then(|x| x.as_str())
            .ok_or("missing field `a`")?;
        let b = v
            .get("b")
            .and_then(|x| x.as_str())
            .ok_or("missing field `b`")?;
        Ok(QuadExt::new(parse_ratio(a)?, parse_ratio(b)?))
    }
}

/// Sign of `a + b*sqrt(2)`, computed without rounding.
fn sign_a_plus_b_sqrt2(a: &BigRational, b: &BigRational) -> i32 {
    let sa = rational_sign(a);
    let sb = rational_sign(b);
    match (sa, sb) {
        (0, 0) => 0,
        (s, 0) => s,
        (0, s) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        // opposite signs: compare a^2 with 2 b^2; the larger magnitude wins
        _ => {
            let a2 = a * a;
            let b2 = BigRational::from(BigInt::from(2)) * b * b;
            match a2.cmp(&b2) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                // a^2 = 2 b^2 with a, b nonzero would make sqrt(2) rational
                Ordering::Equal => unreachable!("sqrt(2) is irrational"),
            }
        }
    }
}

fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.clone() - other.clone();
        diff.signum().cmp(&0)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let two = BigRational::from(BigInt::from(2));
        QuadExt {
            a: &self.a * &rhs.a + &two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv()
    }
}

impl Mul<i64> for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: i64) -> QuadExt {
        let r = BigRational::from(BigInt::from(rhs));
        QuadExt {
            a: self.a * &r,
            b: self.b * &r,
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(2)", format_ratio(&self.a), format_ratio(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        // 1/(1 + sqrt 2) = sqrt 2 - 1
        let v = (QuadExt::one() + QuadExt::sqrt2()).inv();
        assert_eq!(v, QuadExt::new(q(-1, 1), q(1, 1)));
    }

    #[test]
    fn inverse_of_one_plus_two_sqrt2() {
        // 1/(1 + 2 sqrt 2) = (2 sqrt 2 - 1)/7
        let x = QuadExt::one() + QuadExt::sqrt2() * 2;
        let v = x.clone().inv();
        assert_eq!(v, QuadExt::new(q(-1, 7), q(2, 7)));
        assert_eq!(x * v, QuadExt::one());
    }

    #[test]
    fn exact_ordering() {
        // 7/5 < sqrt 2 < 3/2
        let s = QuadExt::sqrt2();
        assert!(QuadExt::from_ratio(q(7, 5)) < s);
        assert!(s < QuadExt::from_ratio(q(3, 2)));
        // 1.41421356 < sqrt2 needs more than f64 care at closer rationals
        assert!(QuadExt::from_ratio(q(665857, 470832)) > s);
    }

    #[test]
    fn floor_values() {
        assert_eq!(QuadExt::sqrt2().floor(), BigInt::from(1));
        assert_eq!((-QuadExt::sqrt2()).floor(), BigInt::from(-2));
        assert_eq!((QuadExt::sqrt2() * 100).floor(), BigInt::from(141));
        assert_eq!(QuadExt::from_ratio(q(-7, 2)).floor(), BigInt::from(-4));
    }

    #[test]
    fn json_round_trip() {
        let v = QuadExt::new(q(3, 4), q(-5, 7));
        let back = QuadExt::from_json(&v.to_json()).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn real_conversion() {
        let v = QuadExt::new(q(1, 2), q(1, 3));
        let expect = 0.5 + std::f64::consts::SQRT_2 / 3.0;
        assert!((v.to_real(128).to_f64() - expect).abs() < 1e-14);
        assert!((v.to_f64() - expect).abs() < 1e-14);
    }
}
