//! Exact multivariate polynomials over big rationals in the four trig
//! variables `cos_a, sin_a, cos_b, sin_b` plus auxiliary variables.
//!
//! The normal form keeps the exponent of each sine variable at most 1 by
//! rewriting `sin^2 = 1 - cos^2`; without this the constraint-set products
//! blow up exponentially in term count.

use crate::rat::{binomial, format_ratio, parse_ratio};
use crate::real::Real;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

pub const COS_A: usize = 0;
pub const SIN_A: usize = 1;
pub const COS_B: usize = 2;
pub const SIN_B: usize = 3;

const BASE_NAMES: [&str; 4] = ["cos_a", "sin_a", "cos_b", "sin_b"];

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("operands belong to different variable registries")]
    RegistryMismatch,
    #[error("malformed polynomial document: {0}")]
    Malformed(String),
    #[error("zero coefficient stored for term {0:?}")]
    ZeroCoefficient(Vec<u32>),
    #[error("terms out of descending graded-lex order at position {0}")]
    OutOfOrder(usize),
    #[error("bad variable list: {0}")]
    BadVariables(String),
    #[error("point dimension {got} does not match registry size {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("working precision {0} below the 64-bit minimum")]
    PrecisionTooLow(usize),
}

/// Ordered variable registry. The first four slots are always the trig
/// variables; epsilon and slack variables follow in registration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn base() -> VarRegistry {
        VarRegistry {
            names: BASE_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn register(&mut self, name: &str) -> Result<usize, PolyError> {
        if self.names.iter().any(|n| n == name) {
            return Err(PolyError::BadVariables(format!("duplicate name `{name}`")));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    pub fn from_names(names: &[String]) -> Result<VarRegistry, PolyError> {
        if names.len() < 4 {
            return Err(PolyError::BadVariables(
                "registry must contain at least the four trig variables".into(),
            ));
        }
        for (i, expected) in BASE_NAMES.iter().enumerate() {
            if names[i] != *expected {
                return Err(PolyError::BadVariables(format!(
                    "variable {i} must be `{expected}`, got `{}`",
                    names[i]
                )));
            }
        }
        let mut reg = VarRegistry::base();
        for name in &names[4..] {
            reg.register(name)?;
        }
        Ok(reg)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when `self` is a prefix of `other` (so exponent vectors can be
    /// padded with zeros).
    pub fn is_prefix_of(&self, other: &VarRegistry) -> bool {
        other.names.len() >= self.names.len() && other.names[..self.names.len()] == self.names[..]
    }
}

fn base_registry() -> &'static Arc<VarRegistry> {
    static BASE: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    BASE.get_or_init(|| Arc::new(VarRegistry::base()))
}

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal-form polynomial: no zero coefficients, sine exponents at most 1.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for TrigPoly {
    fn eq(&self, other: &Self) -> bool {
        self.reg == other.reg && self.terms == other.terms
    }
}
impl Eq for TrigPoly {}

impl TrigPoly {
    pub fn zero(reg: &Arc<VarRegistry>) -> TrigPoly {
        TrigPoly {
            reg: Arc::clone(reg),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_base() -> TrigPoly {
        Self::zero(base_registry())
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: BigRational) -> TrigPoly {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; reg.len()]), c);
        }
        p
    }

    pub fn constant_i64(reg: &Arc<VarRegistry>, c: i64) -> TrigPoly {
        Self::constant(reg, BigRational::from(BigInt::from(c)))
    }

    /// The polynomial `v` for a registered variable index.
    pub fn var(reg: &Arc<VarRegistry>, idx: usize) -> TrigPoly {
        assert!(idx < reg.len(), "variable index out of range");
        let mut e = vec![0u32; reg.len()];
        e[idx] = 1;
        let mut p = Self::zero(reg);
        p.terms.insert(Monomial(e), BigRational::one());
        p
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn same_registry(&self, other: &TrigPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.reg, &other.reg) || self.reg == other.reg {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly, PolyError> {
        self.same_registry(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(TrigPoly {
            reg: Arc::clone(&self.reg),
            terms,
        })
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly, PolyError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TrigPoly {
        if c.is_zero() {
            return Self::zero(&self.reg);
        }
        TrigPoly {
            reg: Arc::clone(&self.reg),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly, PolyError> {
        self.same_registry(other)?;
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                for (m, c) in reduce_sines(e, c) {
                    accumulate(&mut terms, m, c);
                }
            }
        }
        Ok(TrigPoly {
            reg: Arc::clone(&self.reg),
            terms,
        })
    }

    pub fn square(&self) -> TrigPoly {
        self.mul(self).expect("same registry")
    }

    /// Re-normalizes from scratch; a no-op on well-formed values.
    pub fn normalized(&self) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (m2, c2) in reduce_sines(m.0.clone(), c.clone()) {
                accumulate(&mut terms, m2, c2);
            }
        }
        TrigPoly {
            reg: Arc::clone(&self.reg),
            terms,
        }
    }

    /// Pads exponent vectors into a registry extending this polynomial's.
    pub fn embed(&self, target: &Arc<VarRegistry>) -> Result<TrigPoly, PolyError> {
        if !self.reg.is_prefix_of(target) {
            return Err(PolyError::RegistryMismatch);
        }
        let extra = target.len() - self.reg.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.extend(std::iter::repeat(0).take(extra));
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(TrigPoly {
            reg: Arc::clone(target),
            terms,
        })
    }

    /// Evaluation at the requested working precision, deterministic for a
    /// fixed precision: terms are consumed in descending graded-lex order.
    pub fn eval(&self, point: &[Real], precision: usize) -> Result<Real, PolyError> {
        if precision < 64 {
            return Err(PolyError::PrecisionTooLow(precision));
        }
        if point.len() != self.reg.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.reg.len(),
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Real>> = Vec::with_capacity(point.len());
        for (v, x) in point.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0) as usize;
            let mut col = Vec::with_capacity(max_e + 1);
            col.push(Real::from_u64(1, precision));
            for e in 1..=max_e {
                let prev = col[e - 1].clone();
                col.push(prev.mul(x));
            }
            powers.push(col);
        }
        let mut acc = Real::from_u64(0, precision);
        for (m, c) in self.terms.iter().rev() {
            let mut t = Real::from_ratio(c, precision);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.reg.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.reg.len(),
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (m, c) in self.terms.iter().rev() {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_desc()
            .map(|(m, c)| {
                serde_json::json!({
                    "c": format_ratio(c),
                    "e": m.0,
                })
            })
            .collect();
        serde_json::json!({
            "variables": self.reg.names(),
            "terms": terms,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TrigPoly, PolyError> {
        let obj = v
            .as_object()
            .ok_or_else(|| PolyError::Malformed("expected object".into()))?;
        for key in obj.keys() {
            if key != "variables" && key != "terms" {
                return Err(PolyError::Malformed(format!("unknown field `{key}`")));
            }
        }
        let names: Vec<String> = serde_json::from_value(
            obj.get("variables")
                .cloned()
                .ok_or_else(|| PolyError::Malformed("missing `variables`".into()))?,
        )
        .map_err(|e| PolyError::Malformed(e.to_string()))?;
        let reg = Arc::new(VarRegistry::from_names(&names)?);
        let terms_json = obj
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| PolyError::Malformed("missing `terms` array".into()))?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<Monomial> = None;
        for (pos, t) in terms_json.iter().enumerate() {
            let c_str = t
                .get("c")
                .and_then(|c| c.as_str())
                .ok_or_else(|| PolyError::Malformed(format!("term {pos}: missing `c`")))?;
            let c = parse_ratio(c_str)
                .map_err(|e| PolyError::Malformed(format!("term {pos}: {e}")))?;
            let e: Vec<u32> = serde_json::from_value(
                t.get("e")
                    .cloned()
                    .ok_or_else(|| PolyError::Malformed(format!("term {pos}: missing `e`")))?,
            )
            .map_err(|e| PolyError::Malformed(format!("term {pos}: {e}")))?;
            if e.len() != reg.len() {
                return Err(PolyError::DimensionMismatch {
                    expected: reg.len(),
                    got: e.len(),
                });
            }
            if format_ratio(&c) != c_str {
                return Err(PolyError::Malformed(format!(
                    "term {pos}: coefficient `{c_str}` not in lowest terms"
                )));
            }
            if c.is_zero() {
                return Err(PolyError::ZeroCoefficient(e));
            }
            let m = Monomial(e);
            if m.0[SIN_A] > 1 || m.0[SIN_B] > 1 {
                return Err(PolyError::Malformed(format!(
                    "term {pos}: sine exponent above 1 violates normal form"
                )));
            }
            if let Some(p) = &prev {
                if m >= *p {
                    return Err(PolyError::OutOfOrder(pos));
                }
            }
            prev = Some(m.clone());
            terms.insert(m, c);
        }
        Ok(TrigPoly { reg, terms })
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Expands `sin^(2q+r)` into `(1 - cos^2)^q sin^r` for both sine variables.
/// The result terms are already in normal form.
fn reduce_sines(e: Vec<u32>, c: BigRational) -> Vec<(Monomial, BigRational)> {
    let mut out = vec![(e, c)];
    for (sin_idx, cos_idx) in [(SIN_A, COS_A), (SIN_B, COS_B)] {
        let mut next = Vec::with_capacity(out.len());
        for (e, c) in out {
            let se = e[sin_idx];
            if se <= 1 {
                next.push((e, c));
                continue;
            }
            let q = se / 2;
            let r = se % 2;
            for m in 0..=q {
                let mut e2 = e.clone();
                e2[sin_idx] = r;
                e2[cos_idx] += 2 * m;
                let mut c2 = c.clone() * BigRational::from(binomial(q, m));
                if m % 2 == 1 {
                    c2 = -c2;
                }
                next.push((e2, c2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(e, c)| (Monomial(e), c)).collect()
}

// ---------------------------------------------------------------------------
// Chebyshev-style recurrence tables for cos(k b) and sin(k b)
// ---------------------------------------------------------------------------

struct ChebTables {
    // cos_coeffs[k][d] = coefficient of cos_b^d in cos(k b)
    cos_coeffs: Vec<Vec<BigInt>>,
    // sin(k b) = sin_b * sum_d sin_coeffs[k][d] cos_b^d
    sin_coeffs: Vec<Vec<BigInt>>,
}

fn cheb_tables() -> &'static Mutex<ChebTables> {
    static TABLES: OnceLock<Mutex<ChebTables>> = OnceLock::new();
    TABLES.get_or_init(|| {
        Mutex::new(ChebTables {
            cos_coeffs: vec![vec![BigInt::one()], vec![BigInt::zero(), BigInt::one()]],
            sin_coeffs: vec![vec![], vec![BigInt::one()]],
        })
    })
}

fn extend_tables(t: &mut ChebTables, k: usize) {
    while t.cos_coeffs.len() <= k {
        let k2 = t.cos_coeffs.len();
        let next_cos = recurrence_step(&t.cos_coeffs[k2 - 1], &t.cos_coeffs[k2 - 2]);
        let next_sin = recurrence_step(&t.sin_coeffs[k2 - 1], &t.sin_coeffs[k2 - 2]);
        t.cos_coeffs.push(next_cos);
        t.sin_coeffs.push(next_sin);
    }
}

// p_k = 2 x p_{k-1} - p_{k-2}, on dense coefficient vectors in x
fn recurrence_step(prev: &[BigInt], prev2: &[BigInt]) -> Vec<BigInt> {
    let mut next = vec![BigInt::zero(); prev.len() + 1];
    for (d, c) in prev.iter().enumerate() {
        next[d + 1] += c * 2;
    }
    for (d, c) in prev2.iter().enumerate() {
        next[d] -= c;
    }
    next
}

fn poly_in_cos_b(coeffs: &[BigInt], sin_b_exp: u32) -> TrigPoly {
    let reg = base_registry();
    let mut p = TrigPoly::zero(reg);
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0u32; 4];
        e[COS_B] = d as u32;
        e[SIN_B] = sin_b_exp;
        p.terms
            .insert(Monomial(e), BigRational::from(c.clone()));
    }
    p
}

/// `cos(k b)` as a polynomial in `cos_b`, by the recurrence
/// `cos(kb) = 2 cos((k-1)b) cos(b) - cos((k-2)b)`, memoized.
pub fn cos_k_beta(k: u32) -> TrigPoly {
    let mut t = cheb_tables().lock().expect("cheb table lock");
    extend_tables(&mut t, k as usize);
    poly_in_cos_b(&t.cos_coeffs[k as usize], 0)
}

/// `sin(k b)`; every term carries `sin_b` to the first power for k >= 1.
pub fn sin_k_beta(k: u32) -> TrigPoly {
    let mut t = cheb_tables().lock().expect("cheb table lock");
    extend_tables(&mut t, k as usize);
    poly_in_cos_b(&t.sin_coeffs[k as usize], 1)
}

/// `cos(a + k b) = cos_a cos(kb) - sin_a sin(kb)`, normalized.
pub fn cos_alpha_plus_k_beta(k: u32) -> TrigPoly {
    let reg = base_registry();
    let cos_a = TrigPoly::var(reg, COS_A);
    let sin_a = TrigPoly::var(reg, SIN_A);
    let c = cos_a.mul(&cos_k_beta(k)).expect("base registry");
    let s = sin_a.mul(&sin_k_beta(k)).expect("base registry");
    c.sub(&s).expect("base registry")
}

/// The shared base registry `[cos_a, sin_a, cos_b, sin_b]`.
pub fn shared_base_registry() -> Arc<VarRegistry> {
    Arc::clone(base_registry())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn mul_monomials() {
        let reg = shared_base_registry();
        let cb = TrigPoly::var(&reg, COS_B);
        let p = cb.mul(&cb).unwrap();
        assert_eq!(p.term_count(), 1);
        let (m, c) = p.terms_desc().next().unwrap();
        assert_eq!(m.0, vec![0, 0, 2, 0]);
        assert_eq!(*c, q(1));
    }

    #[test]
    fn sin_squared_reduces() {
        let reg = shared_base_registry();
        let sb = TrigPoly::var(&reg, SIN_B);
        let p = sb.mul(&sb).unwrap();
        // 1 - cos_b^2
        let expected = TrigPoly::constant(&reg, q(1))
            .sub(&TrigPoly::var(&reg, COS_B).square())
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = cos_alpha_plus_k_beta(5);
        let z = p.add(&p.scale(&q(-1))).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cos_k_beta_small_cases() {
        let reg = shared_base_registry();
        assert_eq!(cos_k_beta(0), TrigPoly::constant(&reg, q(1)));
        // k=2: 2 cos_b^2 - 1
        let cb = TrigPoly::var(&reg, COS_B);
        let expected = cb.square().scale(&q(2)).sub(&TrigPoly::constant(&reg, q(1))).unwrap();
        assert_eq!(cos_k_beta(2), expected);
        // k=3: 4 cos_b^3 - 3 cos_b
        let expected = cb
            .square()
            .mul(&cb)
            .unwrap()
            .scale(&q(4))
            .sub(&cb.scale(&q(3)))
            .unwrap();
        assert_eq!(cos_k_beta(3), expected);
    }

    #[test]
    fn sin_k_beta_small_cases() {
        let reg = shared_base_registry();
        let sb = TrigPoly::var(&reg, SIN_B);
        let cb = TrigPoly::var(&reg, COS_B);
        assert_eq!(sin_k_beta(1), sb);
        assert_eq!(sin_k_beta(2), sb.mul(&cb).unwrap().scale(&q(2)));
        // k=3: sin_b (4 cos_b^2 - 1)
        let expected = sb
            .mul(&cb.square().scale(&q(4)).sub(&TrigPoly::constant(&reg, q(1))).unwrap())
            .unwrap();
        assert_eq!(sin_k_beta(3), expected);
        // odd function: every term carries sin_b exactly once
        for k in 1..12u32 {
            for (m, _) in sin_k_beta(k).terms_desc() {
                assert_eq!(m.0[SIN_B], 1);
            }
        }
    }

    #[test]
    fn cos_alpha_plus_k_beta_small_cases() {
        let reg = shared_base_registry();
        let cos_a = TrigPoly::var(&reg, COS_A);
        let sin_a = TrigPoly::var(&reg, SIN_A);
        let cb = TrigPoly::var(&reg, COS_B);
        let sb = TrigPoly::var(&reg, SIN_B);
        assert_eq!(cos_alpha_plus_k_beta(0), cos_a);
        let k1 = cos_a
            .mul(&cb)
            .unwrap()
            .sub(&sin_a.mul(&sb).unwrap())
            .unwrap();
        assert_eq!(cos_alpha_plus_k_beta(1), k1);
        // k=2: cos_a (2 cos_b^2 - 1) - 2 sin_a sin_b cos_b
        let k2 = cos_a
            .mul(&cos_k_beta(2))
            .unwrap()
            .sub(&sin_a.mul(&sb).unwrap().mul(&cb).unwrap().scale(&q(2)))
            .unwrap();
        assert_eq!(cos_alpha_plus_k_beta(2), k2);
    }

    #[test]
    fn eval_against_transcendental() {
        let p = cos_k_beta(5);
        let beta = 0.7f64;
        let point = vec![
            Real::from_u64(0, 128),
            Real::from_u64(0, 128),
            Real::from_f64(beta, 128).cos(),
            Real::from_f64(beta, 128).sin(),
        ];
        let v = p.eval(&point, 128).unwrap();
        assert!((v.to_f64() - (5.0 * beta).cos()).abs() < 1e-12);
    }

    #[test]
    fn eval_rejects_low_precision_and_bad_dimension() {
        let p = cos_k_beta(2);
        assert!(matches!(
            p.eval(&[Real::from_u64(1, 64)], 32),
            Err(PolyError::PrecisionTooLow(32))
        ));
        assert!(matches!(
            p.eval(&[Real::from_u64(1, 64)], 64),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eval_zero_poly() {
        let z = TrigPoly::zero_base();
        let pt = vec![
            Real::from_u64(1, 64),
            Real::from_u64(1, 64),
            Real::from_u64(1, 64),
            Real::from_u64(1, 64),
        ];
        assert_eq!(z.eval(&pt, 64).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn json_round_trip() {
        let p = cos_alpha_plus_k_beta(7);
        let back = TrigPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn json_rejects_invalid_documents() {
        let good = cos_k_beta(3).to_json();
        // zero coefficient
        let mut bad = good.clone();
        bad["terms"][0]["c"] = serde_json::json!("0/1");
        assert!(matches!(
            TrigPoly::from_json(&bad),
            Err(PolyError::ZeroCoefficient(_))
        ));
        // out of order
        let mut bad = good.clone();
        let t = bad["terms"].as_array().unwrap().clone();
        bad["terms"] = serde_json::Value::Array(t.into_iter().rev().collect());
        assert!(matches!(
            TrigPoly::from_json(&bad),
            Err(PolyError::OutOfOrder(_))
        ));
        // coefficient not in lowest terms
        let mut bad = good;
        bad["terms"][0]["c"] = serde_json::json!("8/2");
        assert!(TrigPoly::from_json(&bad).is_err());
    }

    #[test]
    fn embed_into_larger_registry() {
        let mut reg = VarRegistry::base();
        reg.register("eps1").unwrap();
        let reg = Arc::new(reg);
        let p = cos_k_beta(2).embed(&reg).unwrap();
        assert_eq!(p.registry().len(), 5);
        let e1 = TrigPoly::var(&reg, 4);
        // mixing registries without embedding fails
        assert!(cos_k_beta(2).add(&e1).is_err());
        assert!(p.add(&e1).is_ok());
    }

    #[test]
    fn normal_form_idempotent() {
        let p = cos_alpha_plus_k_beta(9).square();
        assert_eq!(p.normalized(), p);
    }
}
