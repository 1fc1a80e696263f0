//! Arbitrary-precision real arithmetic used on every numeric evaluation path.
//!
//! Thin wrapper over `astro-float` carrying the working precision with the
//! value, so call sites do not have to thread precision and rounding mode
//! through every operation.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::cell::RefCell;
use std::cmp::Ordering;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// A real number at a fixed working precision in bits.
#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn from_f64(x: f64, precision: usize) -> Self {
        Real {
            v: BigFloat::from_f64(x, precision),
            p: precision,
        }
    }

    pub fn from_u64(x: u64, precision: usize) -> Self {
        Real {
            v: BigFloat::from_u64(x, precision),
            p: precision,
        }
    }

    pub fn from_i64(x: i64, precision: usize) -> Self {
        Real {
            v: BigFloat::from_i64(x, precision),
            p: precision,
        }
    }

    /// Exact conversion when `precision` covers the integer's bit length.
    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        let bits = x.bits().max(1) as usize;
        let p = precision.max(bits + 64).max(64);
        let (sign, digits) = x.to_u64_digits();
        let mut v = Self::accumulate_words(&digits, p);
        if sign == num::bigint::Sign::Minus {
            v.inv_sign();
        }
        Real { v, p }
    }

    fn accumulate_words(digits: &[u64], p: usize) -> BigFloat {
        let base = BigFloat::from_u128(1u128 << 64, p);
        let mut acc = BigFloat::from_u64(0, p);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
        }
        acc
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_ratio(q: &BigRational, precision: usize) -> Self {
        let guard = precision + 64;
        let n = Real::from_bigint(q.numer(), guard);
        let d = Real::from_bigint(q.denom(), guard);
        let mut r = n.div(&d);
        r.set_precision(precision);
        r
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    fn set_precision(&mut self, p: usize) {
        self.v
            .set_precision(p, RM)
            .expect("precision change on finite value");
        self.p = p;
    }

    pub fn pi(precision: usize) -> Self {
        let v = CONSTS.with(|c| c.borrow_mut().pi(precision, RM));
        Real { v, p: precision }
    }

    pub fn two_pi(precision: usize) -> Self {
        let pi = Self::pi(precision + 2);
        let mut r = pi.add(&pi);
        r.set_precision(precision);
        r
    }

    fn join(&self, other: &Real) -> usize {
        self.p.max(other.p)
    }

    pub fn add(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real {
            v: self.v.add(&other.v, p, RM),
            p,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real {
            v: self.v.sub(&other.v, p, RM),
            p,
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real {
            v: self.v.mul(&other.v, p, RM),
            p,
        }
    }

    pub fn div(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real {
            v: self.v.div(&other.v, p, RM),
            p,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            v: self.v.neg(),
            p: self.p,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn cos(&self) -> Real {
        let v = CONSTS.with(|c| self.v.cos(self.p, RM, &mut c.borrow_mut()));
        Real { v, p: self.p }
    }

    pub fn sin(&self) -> Real {
        let v = CONSTS.with(|c| self.v.sin(self.p, RM, &mut c.borrow_mut()));
        Real { v, p: self.p }
    }

    pub fn sqrt(&self) -> Real {
        Real {
            v: self.v.sqrt(self.p, RM),
            p: self.p,
        }
    }

    pub fn powi(&self, n: usize) -> Real {
        Real {
            v: self.v.powi(n, self.p, RM),
            p: self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let (words, _len, sign, exp, _inexact) = match self.v.as_raw_parts() {
            Some(parts) => parts,
            None => return f64::NAN,
        };
        // mantissa is little-endian with the binary point above the top word:
        // value = 0.m * 2^exp
        let mut mant = 0.0f64;
        let low = words.len().saturating_sub(2);
        for w in words[low..].iter() {
            mant = (mant + *w as f64) / 1.8446744073709552e19;
        }
        let val = mant * 2f64.powi(exp);
        if sign == Sign::Neg {
            -val
        } else {
            val
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|s| s.cmp(&0))
    }
}

/// Exact `BigRational` from an `f64` (every finite `f64` is rational).
pub fn f64_to_ratio(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(BigRational::zero());
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let mut num = BigInt::from(mant) * BigInt::from(sign);
    let mut den = BigInt::from(1);
    if e >= 0 {
        num <<= e as usize;
    } else {
        den <<= (-e) as usize;
    }
    Some(BigRational::new(num, den))
}
