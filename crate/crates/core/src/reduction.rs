//! Builds the five constraint sets for a graph as exact polynomials,
//! converts inequalities to equations with slack variables, aggregates to a
//! single polynomial, and evaluates feasibility residuals.

use crate::graph::{DirectedGraph, EdgeValues};
use crate::rat::{dist_to_interval, dist_to_interval_f64, pow2_neg, ratio_to_f64};
use crate::real::Real;
use crate::trig::{
    cos_alpha_plus_k_beta, PolyError, TrigPoly, VarRegistry, COS_A, COS_B, SIN_A, SIN_B,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("edge requires two distinct nodes, got i = j = {0}")]
    SameNode(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("symbolic and transcendental edge values diverge on edge ({i},{j}): |{sym} - {dir}| > {tol}")]
    CrossCheck {
        i: usize,
        j: usize,
        sym: f64,
        dir: f64,
        tol: f64,
    },
    #[error("edge value for ({i},{j}) out of range [0,2]")]
    ValueOutOfRange { i: usize, j: usize },
    #[error("nonzero value on cost-0 edge ({i},{j})")]
    NonzeroOnZeroCost { i: usize, j: usize },
    #[error("missing edge value for ({i},{j})")]
    MissingValue { i: usize, j: usize },
    #[error("graph has {edges} cost-1 edges, enumeration budget is {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
}

/// Frequency index of the trig substitution: `k = (i-1) N + j`.
#[derive(Clone, Copy, Debug)]
pub struct EdgeIndexMap {
    n: usize,
}

impl EdgeIndexMap {
    pub fn new(n: usize) -> EdgeIndexMap {
        EdgeIndexMap { n }
    }

    pub fn k(&self, i: usize, j: usize) -> Result<u32, ReductionError> {
        if i == j {
            return Err(ReductionError::SameNode(i));
        }
        Ok(((i - 1) * self.n + j) as u32)
    }
}

/// The two readings of constraint set 3's propagation rule.
///
/// `Literal` iterates the recurrence exactly as printed; `Token` moves a unit
/// signal along the chosen edges and accumulates per-node visits, which is
/// the reading that reproduces the stated end-state targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Literal,
    Token,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub semantics: Semantics,
    /// Epsilon-interval exponent E (bounds are `[0, 2^-E]`); defaults to N^2.
    pub eps_exponent: Option<u32>,
    pub include_box_bounds: bool,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            semantics: Semantics::Token,
            eps_exponent: None,
            include_box_bounds: false,
        }
    }
}

impl ReductionConfig {
    pub fn eps_exponent_for(&self, n: usize) -> u32 {
        self.eps_exponent.unwrap_or((n * n) as u32)
    }

    pub fn eps_bound_for(&self, n: usize) -> BigRational {
        pow2_neg(self.eps_exponent_for(n))
    }
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub provenance: String,
    pub poly: TrigPoly,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub n: usize,
    pub config: ReductionConfig,
    pub registry: Arc<VarRegistry>,
    pub equations: Vec<Equation>,
}

/// Numeric feasibility violations of the three constraint sets at a point.
/// `v_k` is the distance of the respective value to `[0, 2^-E]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub total: f64,
    pub max: f64,
}

impl ResidualRecord {
    fn from_violations(s: [f64; 3], v: [f64; 3]) -> ResidualRecord {
        ResidualRecord {
            s1: s[0],
            s2: s[1],
            s3: s[2],
            v1: v[0],
            v2: v[1],
            v3: v[2],
            total: v[0] + v[1] + v[2],
            max: v[0].max(v[1]).max(v[2]),
        }
    }
}

/// `x_{i,j} = (1 + cos(a + k b)) C_{i,j}` on the base registry.
pub fn edge_poly(g: &DirectedGraph, i: usize, j: usize) -> Result<TrigPoly, ReductionError> {
    let k = EdgeIndexMap::new(g.n()).k(i, j)?;
    if g.cost(i, j) == 0 {
        return Ok(TrigPoly::zero_base());
    }
    let p = cos_alpha_plus_k_beta(k);
    let one = TrigPoly::constant(p.registry(), BigRational::one());
    Ok(one.add(&p)?)
}

fn two() -> BigRational {
    BigRational::from(BigInt::from(2))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

// all edge polynomials embedded into the system registry
fn embedded_edges(
    g: &DirectedGraph,
    reg: &Arc<VarRegistry>,
) -> Result<BTreeMap<(usize, usize), TrigPoly>, ReductionError> {
    let mut out = BTreeMap::new();
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            if i != j {
                out.insert((i, j), edge_poly(g, i, j)?.embed(reg)?);
            }
        }
    }
    Ok(out)
}

/// Constraint set 1: edge bimodality.
/// `sum_{i != j} ((2 - x)^2 + x^2) = 4N(N-1) - eps1`, moved to one side.
pub fn build_cs1(
    g: &DirectedGraph,
    reg: &Arc<VarRegistry>,
) -> Result<Equation, ReductionError> {
    let n = g.n();
    let xs = embedded_edges(g, reg)?;
    let two_c = TrigPoly::constant(reg, two());
    let mut sum = TrigPoly::zero(reg);
    for x in xs.values() {
        let t = two_c.sub(x)?.square().add(&x.square())?;
        sum = sum.add(&t)?;
    }
    let rhs_const = TrigPoly::constant_i64(reg, 4 * (n as i64) * (n as i64 - 1));
    let eps1 = TrigPoly::var(reg, reg.index_of("eps1").expect("eps1 registered"));
    let poly = sum.sub(&rhs_const)?.add(&eps1)?;
    Ok(Equation {
        label: "CS1".into(),
        provenance: "edge-bimodality".into(),
        poly,
    })
}

/// Constraint set 2: out-degree-one products.
/// `sum_i (prod_{j != i} (x_{i,j} + 1) - 3)^2 = eps2`.
pub fn build_cs2(
    g: &DirectedGraph,
    reg: &Arc<VarRegistry>,
) -> Result<Equation, ReductionError> {
    let xs = embedded_edges(g, reg)?;
    let one_c = TrigPoly::constant(reg, BigRational::one());
    let three_c = TrigPoly::constant_i64(reg, 3);
    let mut sum = TrigPoly::zero(reg);
    for i in 1..=g.n() {
        let mut prod = one_c.clone();
        for j in 1..=g.n() {
            if j != i {
                prod = prod.mul(&xs[&(i, j)].add(&one_c)?)?;
            }
        }
        sum = sum.add(&prod.sub(&three_c)?.square())?;
    }
    let eps2 = TrigPoly::var(reg, reg.index_of("eps2").expect("eps2 registered"));
    let poly = sum.sub(&eps2)?;
    Ok(Equation {
        label: "CS2".into(),
        provenance: "out-degree-one".into(),
        poly,
    })
}

/// Constraint set 3: signal propagation over N discrete steps, under the
/// configured semantics. Final state target: node 1 at 2, others at 1.
pub fn build_cs3(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    reg: &Arc<VarRegistry>,
) -> Result<Equation, ReductionError> {
    let n = g.n();
    let xs = embedded_edges(g, reg)?;
    let one_c = TrigPoly::constant(reg, BigRational::one());
    let h = half();

    // Y_1 = e1
    let mut y: Vec<TrigPoly> = (0..n)
        .map(|i| {
            if i == 0 {
                one_c.clone()
            } else {
                TrigPoly::zero(reg)
            }
        })
        .collect();

    match cfg.semantics {
        Semantics::Literal => {
            for _t in 1..=n {
                let mut next = y.clone();
                for i in 1..=n {
                    for j in 1..=n {
                        if j != i {
                            let inc = y[j - 1].mul(&xs[&(i, j)])?.scale(&h);
                            next[i - 1] = next[i - 1].add(&inc)?;
                        }
                    }
                }
                y = next;
            }
        }
        Semantics::Token => {
            let mut s = y.clone(); // s_1 = e1
            for _t in 1..=n {
                let mut s_next: Vec<TrigPoly> =
                    (0..n).map(|_| TrigPoly::zero(reg)).collect();
                for j in 1..=n {
                    for i in 1..=n {
                        if i != j {
                            let inc = s[i - 1].mul(&xs[&(i, j)])?.scale(&h);
                            s_next[j - 1] = s_next[j - 1].add(&inc)?;
                        }
                    }
                }
                for i in 0..n {
                    y[i] = y[i].add(&s_next[i])?;
                }
                s = s_next;
            }
        }
    }

    let two_c = TrigPoly::constant(reg, two());
    let mut sum = y[0].sub(&two_c)?.square();
    for yi in y.iter().skip(1) {
        sum = sum.add(&yi.sub(&one_c)?.square())?;
    }
    let eps3 = TrigPoly::var(reg, reg.index_of("eps3").expect("eps3 registered"));
    let poly = sum.sub(&eps3)?;
    Ok(Equation {
        label: "CS3".into(),
        provenance: "signal-propagation".into(),
        poly,
    })
}

/// Constraint set 5's two Pythagorean identities (always). The eight interval
/// rows are produced by `build_system` when box bounds are enabled.
pub fn build_cs5(reg: &Arc<VarRegistry>) -> Result<Vec<Equation>, ReductionError> {
    let one_c = TrigPoly::constant(reg, BigRational::one());
    let mut out = Vec::new();
    for (label, cos_idx, sin_idx) in [("PYTH_A", COS_A, SIN_A), ("PYTH_B", COS_B, SIN_B)] {
        let c = TrigPoly::var(reg, cos_idx);
        let s = TrigPoly::var(reg, sin_idx);
        let poly = s.square().add(&c.square())?.sub(&one_c)?;
        out.push(Equation {
            label: label.into(),
            provenance: "pythagorean".into(),
            poly,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `p >= lambda`
    Lower,
    /// `p <= lambda`
    Upper,
}

/// Converts the inequality `p <=> lambda` into an equation with a fresh slack
/// variable z: upper bounds become `z^2 + (p - lambda) = 0`, lower bounds
/// `z^2 + (lambda - p) = 0`.
pub fn slackify(
    p: &TrigPoly,
    kind: BoundKind,
    lambda: &BigRational,
    slack_idx: usize,
    label: &str,
) -> Result<Equation, ReductionError> {
    let reg = p.registry();
    let z2 = TrigPoly::var(reg, slack_idx).square();
    let lam = TrigPoly::constant(reg, lambda.clone());
    let gap = match kind {
        BoundKind::Upper => p.sub(&lam)?,
        BoundKind::Lower => lam.sub(p)?,
    };
    Ok(Equation {
        label: label.into(),
        provenance: "slackified-inequality".into(),
        poly: z2.add(&gap)?,
    })
}

fn system_registry(cfg: &ReductionConfig) -> Arc<VarRegistry> {
    let mut reg = VarRegistry::base();
    for name in ["eps1", "eps2", "eps3"] {
        reg.register(name).expect("fresh name");
    }
    let slack_count = if cfg.include_box_bounds { 14 } else { 6 };
    for s in 1..=slack_count {
        reg.register(&format!("z{s}")).expect("fresh name");
    }
    Arc::new(reg)
}

/// Builds the full constraint system: CS1-CS3, six slackified epsilon bounds,
/// the two Pythagorean identities, and (optionally) eight slackified box
/// bounds. The variable count is constant in N: 13, or 21 with box bounds.
pub fn build_system(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
) -> Result<ConstraintSystem, ReductionError> {
    let reg = system_registry(cfg);
    let mut equations = vec![
        build_cs1(g, &reg)?,
        build_cs2(g, &reg)?,
        build_cs3(g, cfg, &reg)?,
    ];

    let eps_bound = cfg.eps_bound_for(g.n());
    let zero = BigRational::zero();
    let mut slack = reg.index_of("z1").expect("slack variables registered");
    for eps_name in ["eps1", "eps2", "eps3"] {
        let eps = TrigPoly::var(&reg, reg.index_of(eps_name).expect("registered"));
        equations.push(slackify(
            &eps,
            BoundKind::Lower,
            &zero,
            slack,
            &format!("{}_LO", eps_name.to_uppercase()),
        )?);
        slack += 1;
        equations.push(slackify(
            &eps,
            BoundKind::Upper,
            &eps_bound,
            slack,
            &format!("{}_HI", eps_name.to_uppercase()),
        )?);
        slack += 1;
    }

    equations.extend(build_cs5(&reg)?);

    if cfg.include_box_bounds {
        let one = BigRational::one();
        let neg_one = -BigRational::one();
        for (name, idx) in [
            ("COS_A", COS_A),
            ("SIN_A", SIN_A),
            ("COS_B", COS_B),
            ("SIN_B", SIN_B),
        ] {
            let v = TrigPoly::var(&reg, idx);
            equations.push(slackify(
                &v,
                BoundKind::Lower,
                &neg_one,
                slack,
                &format!("BOX_{name}_LO"),
            )?);
            slack += 1;
            equations.push(slackify(
                &v,
                BoundKind::Upper,
                &one,
                slack,
                &format!("BOX_{name}_HI"),
            )?);
            slack += 1;
        }
    }

    Ok(ConstraintSystem {
        n: g.n(),
        config: *cfg,
        registry: reg,
        equations,
    })
}

/// Sum of squared equation polynomials as one normalized polynomial.
pub fn aggregate(sys: &ConstraintSystem) -> Result<TrigPoly, ReductionError> {
    let mut acc = TrigPoly::zero(&sys.registry);
    for eq in &sys.equations {
        acc = acc.add(&eq.poly.square())?;
    }
    Ok(acc)
}

impl ConstraintSystem {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "config": {
                "semantics": match self.config.semantics {
                    Semantics::Literal => "literal",
                    Semantics::Token => "token",
                },
                "eps_exponent": self.config.eps_exponent_for(self.n),
                "include_box_bounds": self.config.include_box_bounds,
            },
            "n": self.n,
            "variables": self.registry.names(),
            "equations": self.equations.iter().map(|eq| serde_json::json!({
                "label": eq.label,
                "provenance": eq.provenance,
                "poly": eq.poly.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------------
// Numeric residuals
// ---------------------------------------------------------------------------

const CROSS_CHECK_TOL: f64 = 1e-9;

/// Edge values at a point, computed through BOTH the symbolic polynomial and
/// direct transcendental evaluation; the two must agree within `1e-9` or the
/// construction is broken.
fn edge_values_at(
    g: &DirectedGraph,
    alpha: f64,
    beta: f64,
    precision: usize,
) -> Result<BTreeMap<(usize, usize), Real>, ReductionError> {
    let km = EdgeIndexMap::new(g.n());
    let a = Real::from_f64(alpha, precision);
    let b = Real::from_f64(beta, precision);
    let point = vec![a.cos(), a.sin(), b.cos(), b.sin()];
    let one = Real::from_u64(1, precision);
    let mut out = BTreeMap::new();
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            if i == j {
                continue;
            }
            if g.cost(i, j) == 0 {
                out.insert((i, j), Real::from_u64(0, precision));
                continue;
            }
            let k = km.k(i, j)?;
            let sym = edge_poly(g, i, j)?.eval(&point, precision)?;
            let dir = one.add(&a.add(&b.mul(&Real::from_u64(k as u64, precision))).cos());
            let diff = sym.sub(&dir).abs().to_f64();
            if diff > CROSS_CHECK_TOL {
                return Err(ReductionError::CrossCheck {
                    i,
                    j,
                    sym: sym.to_f64(),
                    dir: dir.to_f64(),
                    tol: CROSS_CHECK_TOL,
                });
            }
            out.insert((i, j), dir);
        }
    }
    Ok(out)
}

fn numeric_s_values(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    xs: &BTreeMap<(usize, usize), Real>,
    precision: usize,
) -> [f64; 3] {
    let n = g.n();
    let p = precision;
    let one = Real::from_u64(1, p);
    let two = Real::from_u64(2, p);
    let half = Real::from_f64(0.5, p);

    let mut s1 = Real::from_u64(0, p);
    for x in xs.values() {
        let t = two.sub(x).powi(2).add(&x.powi(2));
        s1 = s1.add(&t);
    }

    let three = Real::from_u64(3, p);
    let mut s2 = Real::from_u64(0, p);
    for i in 1..=n {
        let mut prod = one.clone();
        for j in 1..=n {
            if j != i {
                prod = prod.mul(&xs[&(i, j)].add(&one));
            }
        }
        s2 = s2.add(&prod.sub(&three).powi(2));
    }

    let mut y: Vec<Real> = (0..n)
        .map(|i| Real::from_u64(u64::from(i == 0), p))
        .collect();
    match cfg.semantics {
        Semantics::Literal => {
            for _t in 1..=n {
                let mut next = y.clone();
                for i in 1..=n {
                    for j in 1..=n {
                        if j != i {
                            let inc = y[j - 1].mul(&xs[&(i, j)]).mul(&half);
                            next[i - 1] = next[i - 1].add(&inc);
                        }
                    }
                }
                y = next;
            }
        }
        Semantics::Token => {
            let mut s = y.clone();
            for _t in 1..=n {
                let mut s_next: Vec<Real> = (0..n).map(|_| Real::from_u64(0, p)).collect();
                for j in 1..=n {
                    for i in 1..=n {
                        if i != j {
                            let inc = s[i - 1].mul(&xs[&(i, j)]).mul(&half);
                            s_next[j - 1] = s_next[j - 1].add(&inc);
                        }
                    }
                }
                for i in 0..n {
                    y[i] = y[i].add(&s_next[i]);
                }
                s = s_next;
            }
        }
    }
    let mut s3 = y[0].sub(&two).powi(2);
    for yi in y.iter().skip(1) {
        s3 = s3.add(&yi.sub(&one).powi(2));
    }

    [s1.to_f64(), s2.to_f64(), s3.to_f64()]
}

/// Residuals at a real point `(alpha, beta)`, with the dual-path edge-value
/// cross-check.
pub fn residuals(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    alpha: f64,
    beta: f64,
    precision: usize,
) -> Result<ResidualRecord, ReductionError> {
    let xs = edge_values_at(g, alpha, beta, precision)?;
    let [s1, s2, s3] = numeric_s_values(g, cfg, &xs, precision);
    let n = g.n();
    let eps = ratio_to_f64(&cfg.eps_bound_for(n));
    let s1_gap = 4.0 * (n as f64) * (n as f64 - 1.0) - s1;
    let v = [
        dist_to_interval_f64(s1_gap, 0.0, eps),
        dist_to_interval_f64(s2, 0.0, eps),
        dist_to_interval_f64(s3, 0.0, eps),
    ];
    Ok(ResidualRecord::from_violations([s1, s2, s3], v))
}

fn validate_indicator(
    g: &DirectedGraph,
    xvals: &EdgeValues,
) -> Result<(), ReductionError> {
    let zero = BigRational::zero();
    let two = two();
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            if i == j {
                continue;
            }
            let v = xvals
                .get(&(i, j))
                .ok_or(ReductionError::MissingValue { i, j })?;
            if *v < zero || *v > two {
                return Err(ReductionError::ValueOutOfRange { i, j });
            }
            if g.cost(i, j) == 0 && !v.is_zero() {
                return Err(ReductionError::NonzeroOnZeroCost { i, j });
            }
        }
    }
    Ok(())
}

/// Exact raw values `(S1_gap, S2, S3)` of the three constraint sets for a
/// discrete edge-value assignment, bypassing the trig substitution.
pub fn indicator_raw(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    xvals: &EdgeValues,
) -> Result<(BigRational, BigRational, BigRational), ReductionError> {
    validate_indicator(g, xvals)?;
    let n = g.n();
    let two = two();
    let h = half();
    let one = BigRational::one();

    let mut s1 = BigRational::zero();
    for v in xvals.values() {
        let d = &two - v;
        s1 += &d * &d + v * v;
    }
    let s1_gap = BigRational::from(BigInt::from(4 * (n as i64) * (n as i64 - 1))) - s1;

    let three = BigRational::from(BigInt::from(3));
    let mut s2 = BigRational::zero();
    for i in 1..=n {
        let mut prod = one.clone();
        for j in 1..=n {
            if j != i {
                prod *= xvals[&(i, j)].clone() + &one;
            }
        }
        let d = prod - &three;
        s2 += &d * &d;
    }

    let mut y: Vec<BigRational> = (0..n)
        .map(|i| {
            if i == 0 {
                one.clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    match cfg.semantics {
        Semantics::Literal => {
            for _t in 1..=n {
                let mut next = y.clone();
                for i in 1..=n {
                    for j in 1..=n {
                        if j != i {
                            next[i - 1] += y[j - 1].clone() * &xvals[&(i, j)] * &h;
                        }
                    }
                }
                y = next;
            }
        }
        Semantics::Token => {
            let mut s = y.clone();
            for _t in 1..=n {
                let mut s_next = vec![BigRational::zero(); n];
                for j in 1..=n {
                    for i in 1..=n {
                        if i != j {
                            s_next[j - 1] += s[i - 1].clone() * &xvals[&(i, j)] * &h;
                        }
                    }
                }
                for i in 0..n {
                    y[i] += s_next[i].clone();
                }
                s = s_next;
            }
        }
    }
    let d1 = &y[0] - &two;
    let mut s3 = &d1 * &d1;
    for yi in y.iter().skip(1) {
        let d = yi - &one;
        s3 += &d * &d;
    }

    Ok((s1_gap, s2, s3))
}

/// Residuals for a discrete edge-value assignment (the constraint sets'
/// logic evaluated directly, exactly).
pub fn indicator_check(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    xvals: &EdgeValues,
) -> Result<ResidualRecord, ReductionError> {
    let (s1_gap, s2, s3) = indicator_raw(g, cfg, xvals)?;
    let eps = cfg.eps_bound_for(g.n());
    let zero = BigRational::zero();
    let v = [
        ratio_to_f64(&dist_to_interval(&s1_gap, &zero, &eps)),
        ratio_to_f64(&dist_to_interval(&s2, &zero, &eps)),
        ratio_to_f64(&dist_to_interval(&s3, &zero, &eps)),
    ];
    let n = g.n();
    let s1 = 4.0 * (n as f64) * (n as f64 - 1.0) - ratio_to_f64(&s1_gap);
    Ok(ResidualRecord::from_violations(
        [s1, ratio_to_f64(&s2), ratio_to_f64(&s3)],
        v,
    ))
}

/// Verdict of the exhaustive `{0,2}` assignment search.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteVerdict {
    pub feasible: bool,
    /// Satisfying edge sets in canonical sorted order.
    pub satisfying: Vec<Vec<(usize, usize)>>,
}

/// Enumerates all `{0,2}` assignments over the cost-1 edges and reports which
/// satisfy constraint sets 1-3 within the epsilon interval.
///
/// With values in `{0,2}` all three set values are integers, so "within
/// `[0, 2^-E]`" means exactly zero; the search runs in integer arithmetic.
pub fn discrete_bruteforce(
    g: &DirectedGraph,
    cfg: &ReductionConfig,
    budget_edges: usize,
) -> Result<DiscreteVerdict, ReductionError> {
    let edges = g.edges();
    if edges.len() > budget_edges {
        return Err(ReductionError::BudgetExceeded {
            edges: edges.len(),
            budget: budget_edges,
        });
    }
    let n = g.n();
    let mut satisfying = Vec::new();
    for mask in 0u32..(1u32 << edges.len()) {
        let chosen: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, e)| *e)
            .collect();

        // CS2: each node's product is 3^(out-degree); equal to 3 iff exactly 1
        let mut out_deg = vec![0usize; n + 1];
        for &(i, _) in &chosen {
            out_deg[i] += 1;
        }
        if (1..=n).any(|i| out_deg[i] != 1) {
            continue;
        }

        // CS1 is exact at {0,2} values; CS3 via integer iteration (x/2 = 1)
        let mut adj = vec![vec![false; n + 1]; n + 1];
        for &(i, j) in &chosen {
            adj[i][j] = true;
        }
        let mut y = vec![0u128; n + 1];
        y[1] = 1;
        match cfg.semantics {
            Semantics::Literal => {
                for _t in 1..=n {
                    let mut next = y.clone();
                    for i in 1..=n {
                        for j in 1..=n {
                            if j != i && adj[i][j] {
                                next[i] += y[j];
                            }
                        }
                    }
                    y = next;
                }
            }
            Semantics::Token => {
                let mut s = y.clone();
                for _t in 1..=n {
                    let mut s_next = vec![0u128; n + 1];
                    for i in 1..=n {
                        for j in 1..=n {
                            if i != j && adj[i][j] {
                                s_next[j] += s[i];
                            }
                        }
                    }
                    for i in 1..=n {
                        y[i] += s_next[i];
                    }
                    s = s_next;
                }
            }
        }
        let ok = y[1] == 2 && (2..=n).all(|i| y[i] == 1);
        if ok {
            satisfying.push(chosen);
        }
    }
    satisfying.sort();
    Ok(DiscreteVerdict {
        feasible: !satisfying.is_empty(),
        satisfying,
    })
}
