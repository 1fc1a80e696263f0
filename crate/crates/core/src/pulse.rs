//! Exact-arithmetic laboratory for the periodic binary pulse functions with
//! periods `1/(1 + i R)`, R a quadratic irrational.

use crate::quad::QuadExt;
use crate::real::Real;
use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PulseError {
    #[error("invalid pulse system: {0}")]
    InvalidSystem(String),
    #[error("function index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("operation requires two distinct functions, got i = j = {0}")]
    SamePair(usize),
    #[error("event sweep needs {needed} events, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

/// A family of n binary pulse functions sharing the high-duration `x_high`.
#[derive(Clone, Debug)]
pub struct PulseSystem {
    n: usize,
    r: QuadExt,
    x_high: QuadExt,
    delays: Vec<QuadExt>,
}

impl PulseSystem {
    pub fn new(
        n: usize,
        r: QuadExt,
        x_high: QuadExt,
        delays: Vec<QuadExt>,
    ) -> Result<PulseSystem, PulseError> {
        if n == 0 {
            return Err(PulseError::InvalidSystem("need at least one function".into()));
        }
        if r.is_rational() {
            return Err(PulseError::InvalidSystem(
                "R must be irrational (sqrt-2 part nonzero)".into(),
            ));
        }
        if r.signum() <= 0 {
            return Err(PulseError::InvalidSystem("R must be positive".into()));
        }
        if delays.len() != n {
            return Err(PulseError::InvalidSystem(format!(
                "expected {n} delays, got {}",
                delays.len()
            )));
        }
        let sys = PulseSystem {
            n,
            r,
            x_high,
            delays,
        };
        let t_min = sys.period(n)?;
        if sys.x_high.signum() <= 0 || sys.x_high >= t_min {
            return Err(PulseError::InvalidSystem(
                "x_high must satisfy 0 < x_high < smallest period".into(),
            ));
        }
        for i in 1..=n {
            let d = &sys.delays[i - 1];
            if d.signum() < 0 || *d >= sys.period(i)? {
                return Err(PulseError::InvalidSystem(format!(
                    "delay D_{i} must satisfy 0 <= D_{i} < T_{i}"
                )));
            }
        }
        Ok(sys)
    }

    /// Zero-delay system, the configuration the token procedure assumes.
    pub fn zero_delay(n: usize, r: QuadExt, x_high: QuadExt) -> Result<PulseSystem, PulseError> {
        let delays = vec![QuadExt::zero(); n];
        PulseSystem::new(n, r, x_high, delays)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &QuadExt {
        &self.r
    }

    pub fn x_high(&self) -> &QuadExt {
        &self.x_high
    }

    pub fn delay(&self, i: usize) -> &QuadExt {
        &self.delays[i - 1]
    }

    pub fn delays(&self) -> &[QuadExt] {
        &self.delays
    }

    /// Exact period `T_i = 1/(1 + i R)`.
    pub fn period(&self, i: usize) -> Result<QuadExt, PulseError> {
        if i < 1 || i > self.n {
            return Err(PulseError::IndexOutOfRange(i, self.n));
        }
        Ok((QuadExt::one() + self.r.clone() * i as i64).inv())
    }

    /// Closest positive displacement from `t` to the next pulse start of
    /// function i: `E(t)_i = (D_i - t) mod T_i`, in `[0, T_i)`.
    pub fn e_displacement(&self, i: usize, t: &QuadExt) -> Result<QuadExt, PulseError> {
        let period = self.period(i)?;
        let d = self.delays[i - 1].clone() - t.clone();
        let q = d.clone() / period.clone();
        let m = QuadExt::from_ratio(BigRational::from(q.floor()));
        Ok(d - m * period)
    }
}

/// One overtake recording of the token procedure (or one convergent of the
/// continued-fraction oracle).
#[derive(Clone, Debug)]
pub struct AlignmentEntry {
    pub index: usize,
    pub pos_a: QuadExt,
    pub pos_b: QuadExt,
    pub gap: QuadExt,
}

#[derive(Clone, Debug, Default)]
pub struct AlignmentTrace {
    pub entries: Vec<AlignmentEntry>,
}

impl AlignmentTrace {
    pub fn gaps(&self) -> Vec<QuadExt> {
        self.entries.iter().map(|e| e.gap.clone()).collect()
    }
}

/// Outcome of the pairwise incommensurability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    Pass,
    Violation { n1: u64, n2: u64 },
}

/// Verifies exactly that `N1 T_i != N2 T_j` for all multipliers up to `bound`.
///
/// For each N1 only the integers adjacent to `N1 T_i / T_j` can collide, so a
/// single floor computation per N1 covers every N2.
pub fn incommensurability_check(
    sys: &PulseSystem,
    i: usize,
    j: usize,
    bound: u64,
) -> Result<WitnessVerdict, PulseError> {
    if i == j {
        return Err(PulseError::SamePair(i));
    }
    let rho = sys.period(i)?.clone() / sys.period(j)?;
    let mut multiple = QuadExt::zero();
    for n1 in 1..=bound {
        multiple = multiple + rho.clone();
        let f = multiple.floor();
        for cand in [f.clone(), f + 1] {
            if cand >= BigInt::one()
                && cand <= BigInt::from(bound)
                && multiple == QuadExt::from_ratio(BigRational::from(cand.clone()))
            {
                let (_, digits) = cand.to_u64_digits();
                return Ok(WitnessVerdict::Violation {
                    n1,
                    n2: digits.first().copied().unwrap_or(0),
                });
            }
        }
    }
    Ok(WitnessVerdict::Pass)
}

// ---------------------------------------------------------------------------
// Token alignment procedure
// ---------------------------------------------------------------------------

// (P + Q sqrt 2) with integer parts; sign decided exactly
fn int_quad_sign(p: &BigInt, q: &BigInt) -> i32 {
    let sp = int_sign(p);
    let sq = int_sign(q);
    match (sp, sq) {
        (0, 0) => 0,
        (s, 0) => s,
        (0, s) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => {
            let p2 = p * p;
            let q2 = q * q * 2;
            match p2.cmp(&q2) {
                std::cmp::Ordering::Greater => sp,
                std::cmp::Ordering::Less => sq,
                std::cmp::Ordering::Equal => unreachable!("sqrt(2) is irrational"),
            }
        }
    }
}

fn int_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

// floor(y * sqrt 2) for integer y
fn floor_y_sqrt2(y: &BigInt) -> BigInt {
    if y.is_zero() {
        return BigInt::zero();
    }
    let mag2: BigInt = y * y * 2;
    let root = BigInt::from(mag2.magnitude().sqrt());
    if y.is_positive() {
        root
    } else {
        // floor of a negative irrational
        -root - 1
    }
}

// floor((x + y sqrt 2) / d), d > 0, exact
fn floor_quad_int(x: &BigInt, y: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let mut f = (x + floor_y_sqrt2(y)).div_floor(d);
    loop {
        // need f*d <= x + y sqrt 2 < (f+1)*d
        let lo = x - &f * d;
        if int_quad_sign(&lo, y) < 0 {
            f -= 1;
            continue;
        }
        let hi = x - (&f + 1) * d;
        if int_quad_sign(&hi, y) >= 0 {
            f += 1;
            continue;
        }
        return f;
    }
}

// T expressed as (p + q sqrt 2)/d with a shared positive integer denominator
struct ScaledPeriods {
    pa: BigInt,
    qa: BigInt,
    pb: BigInt,
    qb: BigInt,
    d: BigInt,
}

fn scale_periods(ta: &QuadExt, tb: &QuadExt) -> ScaledPeriods {
    let denoms = [
        ta.rational_part().denom().clone(),
        ta.sqrt2_part().denom().clone(),
        tb.rational_part().denom().clone(),
        tb.sqrt2_part().denom().clone(),
    ];
    let mut d = BigInt::one();
    for den in &denoms {
        d = d.lcm(den);
    }
    let scale = |q: &BigRational| -> BigInt { q.numer() * (&d / q.denom()) };
    ScaledPeriods {
        pa: scale(ta.rational_part()),
        qa: scale(ta.sqrt2_part()),
        pb: scale(tb.rational_part()),
        qb: scale(tb.sqrt2_part()),
        d,
    }
}

/// Executes the token-overtake procedure in exact arithmetic, doubling
/// factor included, recording the gap at each overtake.
///
/// Token positions stay integer multiples of the two periods, so the state is
/// a pair of big-integer multipliers; every comparison and floor reduces to
/// exact integer arithmetic in Q(sqrt 2).
pub fn token_alignment(
    sys: &PulseSystem,
    i: usize,
    j: usize,
    max_overtakes: usize,
) -> Result<AlignmentTrace, PulseError> {
    if i == j {
        return Err(PulseError::SamePair(i));
    }
    let ti = sys.period(i)?;
    let tj = sys.period(j)?;
    // Token A rides the larger period
    let (ta, tb) = if ti > tj { (ti, tj) } else { (tj, ti) };
    let sp = scale_periods(&ta, &tb);

    // rho = T_A / T_B rationalized to (pr + qr sqrt 2)/dr, dr > 0
    let (mut pr, mut qr, mut dr) = {
        let two = BigInt::from(2);
        let num_p = &sp.pa * &sp.pb - &two * &sp.qa * &sp.qb;
        let num_q = &sp.qa * &sp.pb - &sp.pa * &sp.qb;
        let den = &sp.pb * &sp.pb - &two * &sp.qb * &sp.qb;
        (num_p, num_q, den)
    };
    if dr.is_negative() {
        pr = -pr;
        qr = -qr;
        dr = -dr;
    }

    let mut u = BigInt::one(); // pos_A = u * T_A
    let mut trace = AlignmentTrace::default();
    for index in 1..=max_overtakes {
        // advance token B to the first multiple beyond pos_A
        let v = floor_quad_int(&(&u * &pr), &(&u * &qr), &dr) + 1;

        // record the strictly positive difference
        let gp = &v * &sp.pb - &u * &sp.pa;
        let gq = &v * &sp.qb - &u * &sp.qa;
        debug_assert!(int_quad_sign(&gp, &gq) > 0);
        let make = |p: &BigInt, q: &BigInt| {
            QuadExt::new(
                BigRational::new(p.clone(), sp.d.clone()),
                BigRational::new(q.clone(), sp.d.clone()),
            )
        };
        trace.entries.push(AlignmentEntry {
            index,
            pos_a: make(&(&u * &sp.pa), &(&u * &sp.qa)),
            pos_b: make(&(&v * &sp.pb), &(&v * &sp.qb)),
            gap: make(&gp, &gq),
        });
        if index == max_overtakes {
            break;
        }

        // integral multiple of the difference inside pos_A
        let (mut nx, mut ny, mut nd) = {
            let x = &u * (&sp.pa * &gp - BigInt::from(2) * &sp.qa * &gq);
            let y = &u * (&sp.qa * &gp - &sp.pa * &gq);
            let d = &gp * &gp - BigInt::from(2) * &gq * &gq;
            (x, y, d)
        };
        if nd.is_negative() {
            nx = -nx;
            ny = -ny;
            nd = -nd;
        }
        let m = floor_quad_int(&nx, &ny, &nd) + 1;

        // scale token A by twice the overtake count, as specified
        u = BigInt::from(2) * &u * &m;
        let _ = &v * &m; // scaled token B position; the next pass jumps past it
    }
    Ok(trace)
}

// ---------------------------------------------------------------------------
// Continued-fraction oracle
// ---------------------------------------------------------------------------

/// Continued-fraction convergents `p/q` of `T_i / T_j`, exact.
pub fn cf_convergents(
    sys: &PulseSystem,
    i: usize,
    j: usize,
    depth: usize,
) -> Result<Vec<(BigInt, BigInt)>, PulseError> {
    if i == j {
        return Err(PulseError::SamePair(i));
    }
    let mut rho = sys.period(i)?.clone() / sys.period(j)?;
    let mut out = Vec::with_capacity(depth);
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for _ in 0..depth {
        let a = rho.floor();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
        let frac = rho - QuadExt::from_ratio(BigRational::from(a));
        // a quadratic irrational never terminates
        debug_assert!(!frac.is_zero());
        rho = frac.inv();
    }
    Ok(out)
}

/// Independent oracle for the alignment claim: records `|q T_i - p T_j|` per
/// convergent. Gaps strictly decrease and tend to zero.
pub fn cf_alignment(
    sys: &PulseSystem,
    i: usize,
    j: usize,
    depth: usize,
) -> Result<AlignmentTrace, PulseError> {
    let ti = sys.period(i)?;
    let tj = sys.period(j)?;
    let mut trace = AlignmentTrace::default();
    for (index, (p, q)) in cf_convergents(sys, i, j, depth)?.into_iter().enumerate() {
        let pos_a = ti.clone() * QuadExt::from_ratio(BigRational::from(q.clone()));
        let pos_b = tj.clone() * QuadExt::from_ratio(BigRational::from(p.clone()));
        let gap = (pos_a.clone() - pos_b.clone()).abs();
        trace.entries.push(AlignmentEntry {
            index: index + 1,
            pos_a,
            pos_b,
            gap,
        });
    }
    Ok(trace)
}

// ---------------------------------------------------------------------------
// Simultaneous-high event sweep
// ---------------------------------------------------------------------------

/// A maximal interval where all n functions are high, with a reported
/// endpoint error bound.
#[derive(Clone, Debug)]
pub struct HighInterval {
    pub start: Real,
    pub end: Real,
    pub err: Real,
}

impl HighInterval {
    pub fn length_f64(&self) -> f64 {
        self.end.to_f64() - self.start.to_f64()
    }
}

/// Event sweep over all pulse windows within the horizon, at configurable
/// floating precision. Returns maximal all-high intervals of length at least
/// `min_duration`.
pub fn simultaneous_high_intervals(
    sys: &PulseSystem,
    horizon: &QuadExt,
    min_duration: &QuadExt,
    precision: usize,
    max_events: u64,
) -> Result<Vec<HighInterval>, PulseError> {
    if horizon.signum() <= 0 {
        return Err(PulseError::InvalidSystem("horizon must be positive".into()));
    }
    if min_duration.signum() < 0 || *min_duration > sys.x_high {
        // min_duration > x_high can never be met; allowed, yields empty
        if min_duration.signum() < 0 {
            return Err(PulseError::InvalidSystem(
                "min_duration must be non-negative".into(),
            ));
        }
        return Ok(Vec::new());
    }

    // budget check before generating anything
    let mut needed: u64 = 0;
    for i in 1..=sys.n {
        let t = sys.period(i)?;
        let count = (horizon.clone() / t).floor();
        let c: u64 = count
            .to_u64_digits()
            .1
            .first()
            .copied()
            .unwrap_or(0)
            .saturating_add(2);
        needed = needed.saturating_add(c.saturating_mul(2));
    }
    if needed > max_events {
        return Err(PulseError::BudgetExceeded {
            needed,
            budget: max_events,
        });
    }

    #[derive(Clone)]
    struct Event {
        time: Real,
        delta: i32,
    }
    let horizon_r = horizon.to_real(precision);
    let x_r = sys.x_high.to_real(precision);
    let mut events: Vec<Event> = Vec::new();
    for i in 1..=sys.n {
        let t_r = sys.period(i)?.to_real(precision);
        let d_r = sys.delay(i).to_real(precision);
        let mut m: u64 = 0;
        loop {
            let start = d_r.add(&t_r.mul(&Real::from_u64(m, precision)));
            if start >= horizon_r {
                break;
            }
            let end = start.add(&x_r);
            events.push(Event {
                time: start,
                delta: 1,
            });
            events.push(Event {
                time: if end < horizon_r {
                    end
                } else {
                    horizon_r.clone()
                },
                delta: -1,
            });
            m += 1;
        }
    }
    // ends before starts at equal instants (half-open high windows)
    events.sort_by(|a, b| {
        a.time
            .partial_cmp(&b.time)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.delta.cmp(&b.delta))
    });

    let min_r = min_duration.to_real(precision);
    let err = error_bound(precision, horizon);
    let mut active = 0i32;
    let mut all_high_since: Option<Real> = None;
    let mut out = Vec::new();
    for ev in &events {
        let was_all = active == sys.n as i32;
        active += ev.delta;
        let is_all = active == sys.n as i32;
        if !was_all && is_all {
            all_high_since = Some(ev.time.clone());
        } else if was_all && !is_all {
            let start = all_high_since.take().expect("open interval");
            let len = ev.time.sub(&start);
            if len >= min_r {
                out.push(HighInterval {
                    start,
                    end: ev.time.clone(),
                    err: err.clone(),
                });
            }
        }
    }
    Ok(out)
}

// endpoint error: events are one multiply-add at precision p, so a few ulps
// of the horizon magnitude
fn error_bound(precision: usize, horizon: &QuadExt) -> Real {
    let mag = horizon.to_f64().abs().max(1.0);
    let ulp = mag * 2f64.powi(-(precision.min(1000) as i32) + 8);
    Real::from_f64(ulp, 64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sys_sqrt2(n: usize) -> PulseSystem {
        // R = sqrt 2, x_high = 1/10 < T_n
        PulseSystem::zero_delay(n, QuadExt::sqrt2(), QuadExt::from_ratio(q(1, 10))).unwrap()
    }

    #[test]
    fn periods_match_hand_values() {
        let sys = sys_sqrt2(2);
        // 1/(1+sqrt2) = sqrt2 - 1
        assert_eq!(sys.period(1).unwrap(), QuadExt::new(q(-1, 1), q(1, 1)));
        // 1/(1+2 sqrt2) = (2 sqrt2 - 1)/7
        assert_eq!(sys.period(2).unwrap(), QuadExt::new(q(-1, 7), q(2, 7)));
        assert!(sys.period(3).is_err());
    }

    #[test]
    fn periods_strictly_decrease() {
        let sys = sys_sqrt2(5);
        for i in 1..5 {
            assert!(sys.period(i).unwrap() > sys.period(i + 1).unwrap());
        }
    }

    #[test]
    fn displacement_at_origin_and_periodicity() {
        let sys = sys_sqrt2(2);
        let zero = QuadExt::zero();
        assert_eq!(sys.e_displacement(1, &zero).unwrap(), QuadExt::zero());
        // t = D + T wraps to zero
        let t = sys.period(1).unwrap();
        assert_eq!(sys.e_displacement(1, &t).unwrap(), QuadExt::zero());
        // half-way example: t = 1/2 with T = sqrt2 - 1 gives 2 sqrt2 - 5/2
        let e = sys
            .e_displacement(1, &QuadExt::from_ratio(q(1, 2)))
            .unwrap();
        assert_eq!(e, QuadExt::new(q(-5, 2), q(2, 1)));
        // periodicity in general
        let t1 = QuadExt::from_ratio(q(7, 3));
        let t2 = t1.clone() + sys.period(1).unwrap();
        assert_eq!(
            sys.e_displacement(1, &t1).unwrap(),
            sys.e_displacement(1, &t2).unwrap()
        );
    }

    #[test]
    fn witness_check_small_bound() {
        let sys = sys_sqrt2(3);
        assert_eq!(
            incommensurability_check(&sys, 1, 2, 500).unwrap(),
            WitnessVerdict::Pass
        );
        assert!(matches!(
            incommensurability_check(&sys, 1, 1, 10),
            Err(PulseError::SamePair(1))
        ));
    }

    #[test]
    fn rational_r_rejected_at_construction() {
        let err = PulseSystem::zero_delay(2, QuadExt::one(), QuadExt::from_ratio(q(1, 10)));
        assert!(err.is_err());
    }

    #[test]
    fn first_overtake_gap_matches_brute_force() {
        let sys = sys_sqrt2(2);
        let trace = token_alignment(&sys, 1, 2, 3).unwrap();
        // T_1/T_2 ~ 1.585: token B (period T_2) overtakes at its 2nd step
        let t1 = sys.period(1).unwrap();
        let t2 = sys.period(2).unwrap();
        let expected = t2.clone() * 2 - t1;
        assert_eq!(trace.entries[0].gap, expected);
        assert_eq!(trace.entries.len(), 3);
        for e in &trace.entries {
            assert!(e.gap.signum() > 0, "gap must be exactly positive");
        }
    }

    #[test]
    fn token_alignment_respects_budget() {
        let sys = sys_sqrt2(2);
        let trace = token_alignment(&sys, 1, 2, 6).unwrap();
        assert_eq!(trace.entries.len(), 6);
    }

    #[test]
    fn cf_gaps_strictly_decrease() {
        let sys = sys_sqrt2(2);
        let trace = cf_alignment(&sys, 1, 2, 8).unwrap();
        assert_eq!(trace.entries.len(), 8);
        for w in trace.entries.windows(2) {
            assert!(w[1].gap < w[0].gap);
            assert!(w[1].gap.signum() > 0);
        }
        assert!(cf_alignment(&sys, 1, 2, 0).unwrap().entries.is_empty());
    }

    #[test]
    fn cf_convergents_are_best_approximations() {
        let sys = sys_sqrt2(2);
        let convs = cf_convergents(&sys, 1, 2, 6).unwrap();
        let ti = sys.period(1).unwrap();
        let tj = sys.period(2).unwrap();
        // brute force over all q up to the 4th convergent's denominator
        let (_, q4) = &convs[3];
        let gap4 = (ti.clone() * QuadExt::from_ratio(BigRational::from(q4.clone()))
            - tj.clone() * QuadExt::from_ratio(BigRational::from(convs[3].0.clone())))
        .abs();
        let mut q = BigInt::one();
        while &q < q4 {
            // best p for this q
            let ratio = ti.clone() * QuadExt::from_ratio(BigRational::from(q.clone()))
                / tj.clone();
            let p = ratio.floor();
            for cand in [p.clone(), &p + 1] {
                let gap = (ti.clone() * QuadExt::from_ratio(BigRational::from(q.clone()))
                    - tj.clone() * QuadExt::from_ratio(BigRational::from(cand)))
                .abs();
                assert!(gap >= gap4, "smaller gap below convergent denominator");
            }
            q += 1;
        }
    }

    #[test]
    fn single_function_intervals_are_its_windows() {
        let sys = PulseSystem::zero_delay(1, QuadExt::sqrt2(), QuadExt::from_ratio(q(1, 10)))
            .unwrap();
        let hz = QuadExt::from_int(2);
        let ivs =
            simultaneous_high_intervals(&sys, &hz, &QuadExt::zero(), 128, 10_000).unwrap();
        // T_1 ~ 0.414, so windows start at 0, .414, .828, 1.243, 1.657
        assert_eq!(ivs.len(), 5);
        for iv in &ivs {
            assert!((iv.length_f64() - 0.1).abs() < 1e-9);
        }
    }

    #[test]
    fn overlapping_pair_near_origin() {
        // R = sqrt2/100: periods differ by <1%, both high on [0, 0.4)
        let r = QuadExt::new(q(0, 1), q(1, 100));
        let sys = PulseSystem::zero_delay(2, r, QuadExt::from_ratio(q(2, 5))).unwrap();
        let hz = QuadExt::from_int(1);
        let ivs = simultaneous_high_intervals(
            &sys,
            &hz,
            &QuadExt::from_ratio(q(39, 100)),
            256,
            10_000,
        )
        .unwrap();
        assert!(!ivs.is_empty());
        assert!(ivs[0].start.to_f64().abs() < 1e-30);
        assert!(ivs[0].length_f64() >= 0.39);
    }

    #[test]
    fn impossible_min_duration_yields_empty() {
        let sys = sys_sqrt2(2);
        let ivs = simultaneous_high_intervals(
            &sys,
            &QuadExt::from_int(3),
            &QuadExt::from_ratio(q(1, 2)),
            128,
            10_000,
        )
        .unwrap();
        assert!(ivs.is_empty());
    }

    #[test]
    fn budget_guard_trips() {
        let sys = sys_sqrt2(2);
        let err = simultaneous_high_intervals(
            &sys,
            &QuadExt::from_int(1000),
            &QuadExt::zero(),
            128,
            10,
        );
        assert!(matches!(err, Err(PulseError::BudgetExceeded { .. })));
    }
}
