//! Constructive search for solutions of `y = a x + b` with both sides in
//! `PS(alpha)`. The pipeline: normalize to the integer form `c y - d x = e`,
//! pick a base solution and a target interval for the fractional-part filter,
//! then scan windows attached to convergents of `a^(1/alpha)`. Candidates are
//! only emitted after the exact identity holds on certified floors.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::certreal::{self, AlphaSpec, PrecisionPolicy};
use crate::dioph;
use crate::error::{Error, Result};
use crate::pscore;

/// The equation `y = a x + b` with its derived integer form
/// `c y - d x = e` (`c = a2 b2`, `d = a1 b2`, `e = a2 b1` for
/// `a = a1/a2`, `b = b1/b2` in lowest terms).
#[derive(Debug, Clone)]
pub struct LinearEquation {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigUint,
    pub d: BigUint,
    pub e: BigUint,
    /// gcd(c,d) | e: the integer form has solutions at all
    pub solvable: bool,
}

/// Integers with `c u - d v = e` and `0 <= v < c`.
#[derive(Debug, Clone)]
pub struct BaseSolution {
    pub u: BigInt,
    pub v: BigInt,
}

/// Half-open interval `[lo, hi)` inside `[0, 1)` for the fractional-part
/// filter.
#[derive(Debug, Clone)]
pub struct TargetInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl TargetInterval {
    pub fn diameter(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        x >= &self.lo && x < &self.hi
    }
}

/// Where a verified pair came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Scan { p: BigInt, q: BigUint, x: BigUint },
    BruteForce,
}

/// A verified solution: `x` and `y` are PS(alpha) members with indices
/// `n_x`, `n_y`, and `y = a x + b` holds in exact rational arithmetic.
#[derive(Debug, Clone)]
pub struct SolutionPair {
    pub x: BigInt,
    pub y: BigInt,
    pub n_x: BigUint,
    pub n_y: BigUint,
    pub provenance: Provenance,
}

/// Search knobs. `gamma`, `xi`, `window_multiplier` only steer window
/// placement; soundness never depends on them.
#[derive(Debug, Clone)]
pub struct SearchParams {
    pub gamma: f64,
    pub xi: f64,
    pub epsilon: BigRational,
    pub max_convergents: usize,
    /// the window is `(V, (1+w)V]`; the classical choice is w = 1
    pub window_multiplier: f64,
    pub time_budget: Duration,
    pub limit: usize,
    pub policy: PrecisionPolicy,
}

impl SearchParams {
    /// Defaults for a given equation and exponent: `gamma` from
    /// [`plan_gamma`], `xi = 0.01 (gamma - alpha)`,
    /// `epsilon = min(1/10, (1 - e/d)/2)`.
    pub fn defaults(eq: &LinearEquation, alpha: &AlphaSpec) -> Result<Self> {
        let af = alpha.to_f64();
        let gamma = if af < 2.0 {
            2.0
        } else {
            plan_gamma(af, af + 0.1, af + 1.0, 0.5)?
        };
        let xi = 0.01 * (gamma - af);
        let e_over_d = BigRational::new(BigInt::from(eq.e.clone()), BigInt::from(eq.d.clone()));
        let half_gap = (BigRational::one() - e_over_d) / BigRational::from_integer(2.into());
        let tenth = BigRational::new(BigInt::one(), BigInt::from(10));
        let epsilon = if half_gap < tenth { half_gap } else { tenth };
        Ok(SearchParams {
            gamma,
            xi,
            epsilon,
            max_convergents: 40,
            window_multiplier: 1.0,
            time_budget: Duration::from_secs(60),
            limit: 3,
            policy: PrecisionPolicy::default(),
        })
    }
}

/// Normalize `y = a x + b` to the integer form.
pub fn normalize(a: &BigRational, b: &BigRational) -> Result<LinearEquation> {
    if !a.is_positive() || a.is_one() {
        return Err(Error::invalid("slope a must be positive and != 1"));
    }
    if b.is_negative() {
        return Err(Error::invalid("offset b must be nonnegative"));
    }
    let (a1, a2) = (a.numer().magnitude(), a.denom().magnitude());
    let (b1, b2) = (b.numer().magnitude(), b.denom().magnitude());
    let c = a2 * b2;
    let d = a1 * b2;
    let e = a2 * b1;
    let solvable = e.is_multiple_of(&c.gcd(&d));
    Ok(LinearEquation {
        a: a.clone(),
        b: b.clone(),
        c,
        d,
        e,
        solvable,
    })
}

/// Extended-gcd base solution of `c u - d v = e` with `0 <= v < c`.
pub fn base_solution(eq: &LinearEquation) -> Result<BaseSolution> {
    let c = BigInt::from(eq.c.clone());
    let d = BigInt::from(eq.d.clone());
    let e = BigInt::from(eq.e.clone());
    let ext = c.extended_gcd(&d);
    if !e.is_multiple_of(&ext.gcd) {
        return Err(Error::NotSolvableInN {
            c: eq.c.clone(),
            d: eq.d.clone(),
            e: eq.e.clone(),
        });
    }
    let scale = &e / &ext.gcd;
    // c*x + d*y = g  =>  c*(x s) - d*(-y s) = e
    let v0 = -(&ext.y * &scale);
    let step = &c / &ext.gcd;
    let v = v0.mod_floor(&step);
    let u = (&e + &d * &v) / &c;
    debug_assert_eq!(&c * &u - &d * &v, e);
    Ok(BaseSolution { u, v })
}

/// The interval `I = [v/c, (v+1)/c) ∩ [u/d + eps/d, u/d + (1-eps)/d)`.
/// Nonempty with positive length whenever `0 <= e < d` and
/// `0 < eps < 1 - e/d`.
pub fn target_interval(
    eq: &LinearEquation,
    base: &BaseSolution,
    epsilon: &BigRational,
) -> Result<TargetInterval> {
    if eq.e >= eq.d {
        return Err(Error::invalid(
            "interval requires e < d (equivalently b < a)",
        ));
    }
    let one = BigRational::one();
    let e_over_d = BigRational::new(BigInt::from(eq.e.clone()), BigInt::from(eq.d.clone()));
    if !epsilon.is_positive() || *epsilon >= &one - &e_over_d {
        return Err(Error::invalid("epsilon must lie in (0, 1 - e/d)"));
    }
    // above 1/2 the trimmed band [u/d + eps/d, u/d + (1-eps)/d) is empty
    if epsilon + epsilon >= one {
        return Err(Error::invalid("epsilon must stay below 1/2"));
    }
    let c = BigRational::from_integer(BigInt::from(eq.c.clone()));
    let d = BigRational::from_integer(BigInt::from(eq.d.clone()));
    let u = BigRational::from_integer(base.u.clone());
    let v = BigRational::from_integer(base.v.clone());
    let lo = &u / &d + epsilon / &d;
    let hi_d = &u / &d + (&one - epsilon) / &d;
    let hi_c = (&v + one) / &c;
    let hi = if hi_d < hi_c { hi_d } else { hi_c };
    debug_assert!(lo < hi);
    Ok(TargetInterval { lo, hi })
}

/// Scan counters alongside the verified pairs: window population, filter
/// passes, and exact-identity confirmations.
#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub pairs: Vec<SolutionPair>,
    pub window_size: u64,
    pub filter_pass: u64,
    pub verified: u64,
}

/// Scan `x` over the window attached to one convergent `p/q`. Every `x`
/// with `frac((q x)^alpha / c)` in `I` becomes a candidate
/// `(X, Y) = (floor((q x)^alpha), floor((p x)^alpha))`; the candidate is
/// emitted iff `c Y - d X = e` holds exactly. The interval filter is
/// advisory: skipping an `x` can only delay a find, never corrupt one.
pub fn scan_window(
    eq: &LinearEquation,
    alpha: &AlphaSpec,
    conv: &dioph::Convergent,
    interval: &TargetInterval,
    params: &SearchParams,
) -> Result<ScanReport> {
    if !conv.p.is_positive() || conv.p.magnitude() == &conv.q {
        return Err(Error::invalid("convergent must have p > 0 and p != q"));
    }
    let af = alpha.to_f64();
    let expo = (params.gamma - af - params.xi) / af;
    if expo <= 0.0 {
        return Err(Error::invalid("gamma - alpha - xi must be positive"));
    }
    let qf = conv.q.to_f64().unwrap_or(f64::MAX);
    let v_n = qf.powf(expo);
    let x_lo = v_n.floor() as u64 + 1;
    let x_hi = ((1.0 + params.window_multiplier) * v_n).floor() as u64;
    scan_x_range(eq, alpha, &conv.p, &conv.q, x_lo, x_hi, interval, params)
}

fn scan_x_range(
    eq: &LinearEquation,
    alpha: &AlphaSpec,
    p: &BigInt,
    q: &BigUint,
    x_lo: u64,
    x_hi: u64,
    interval: &TargetInterval,
    params: &SearchParams,
) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    if x_hi < x_lo {
        return Ok(report);
    }
    report.window_size = x_hi - x_lo + 1;
    let c_int = BigInt::from(eq.c.clone());
    let d_int = BigInt::from(eq.d.clone());
    let e_int = BigInt::from(eq.e.clone());
    let results: Vec<Result<Option<(bool, Option<SolutionPair>)>>> = (x_lo..=x_hi)
        .into_par_iter()
        .map(|x| {
            let xb = BigUint::from(x);
            let n_x = q * &xb;
            let big_x = certreal::certified_floor_pow(&n_x, alpha, &params.policy)?;
            // frac((qx)^alpha / c) from the already-certified floor:
            // floor(t/c) = floor(floor(t)/c) for integer c >= 1
            let (frac, _) = certreal::frac_pow(&n_x, alpha, &params.policy, 96)?;
            let whole_frac = (BigRational::from_integer(big_x.value().clone())
                + frac.mid())
                / BigRational::from_integer(c_int.clone());
            let frac_over_c = &whole_frac - whole_frac.floor();
            let hit = interval.contains(&frac_over_c);
            if !hit {
                return Ok(Some((false, None)));
            }
            let n_y = p.magnitude() * &xb;
            let big_y = certreal::certified_floor_pow(&n_y, alpha, &params.policy)?;
            if &c_int * big_y.value() - &d_int * big_x.value() == e_int {
                let pair = SolutionPair {
                    x: big_x.value().clone(),
                    y: big_y.value().clone(),
                    n_x,
                    n_y,
                    provenance: Provenance::Scan {
                        p: p.clone(),
                        q: q.clone(),
                        x: xb,
                    },
                };
                Ok(Some((true, Some(pair))))
            } else {
                Ok(Some((true, None)))
            }
        })
        .collect();
    for r in results {
        match r? {
            Some((hit, pair)) => {
                if hit {
                    report.filter_pass += 1;
                }
                if let Some(pair) = pair {
                    report.verified += 1;
                    report.pairs.push(pair);
                }
            }
            None => {}
        }
    }
    Ok(report)
}

/// Outcome of a full search, including the budget trace.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub pairs: Vec<SolutionPair>,
    pub convergents_tried: usize,
    pub largest_q: BigUint,
}

/// Full pipeline: iterate convergents of `a^(1/alpha)` in increasing `q`,
/// scanning each window, until `limit` distinct pairs are found or a budget
/// runs out. With zero pairs at exhaustion the error carries the trace.
pub fn find_solutions(
    a: &BigRational,
    b: &BigRational,
    alpha: &AlphaSpec,
    params: &SearchParams,
) -> Result<SearchOutcome> {
    let eq = normalize(a, b)?;
    if !eq.solvable {
        return Err(Error::NotSolvableInN {
            c: eq.c,
            d: eq.d,
            e: eq.e,
        });
    }
    let base = base_solution(&eq)?;
    let interval = target_interval(&eq, &base, &params.epsilon)?;
    let started = Instant::now();
    let mut seen: HashMap<(BigInt, BigInt), ()> = HashMap::new();
    let mut pairs: Vec<SolutionPair> = Vec::new();
    let mut tried = 0usize;
    let mut largest_q = BigUint::zero();

    let seq = dioph::convergents(a, alpha, params.max_convergents, &params.policy)?;
    if let Some(exact) = &seq.exact {
        // exact branch: a^(1/alpha) = p*/q* so the error term vanishes and
        // every filtered x verifies; scan expanding x ranges directly
        let p = exact.numer().clone();
        let q = exact.denom().magnitude().clone();
        let mut x_lo = 1u64;
        let mut width = 16u64;
        while pairs.len() < params.limit && started.elapsed() < params.time_budget {
            let rep = scan_x_range(
                &eq,
                alpha,
                &p,
                &q,
                x_lo,
                x_lo + width - 1,
                &interval,
                params,
            )?;
            absorb(&mut pairs, &mut seen, rep.pairs, params.limit);
            x_lo += width;
            width *= 2;
            tried += 1;
            largest_q = q.clone();
            if tried >= params.max_convergents {
                break;
            }
        }
    } else {
        for conv in &seq.convergents {
            if pairs.len() >= params.limit || started.elapsed() >= params.time_budget {
                break;
            }
            if !conv.p.is_positive() || conv.p.magnitude() == &conv.q {
                continue;
            }
            tried += 1;
            largest_q = conv.q.clone();
            let rep = scan_window(&eq, alpha, conv, &interval, params)?;
            absorb(&mut pairs, &mut seen, rep.pairs, params.limit);
        }
    }

    if pairs.is_empty() {
        return Err(Error::BudgetExhausted {
            convergents_tried: tried,
            largest_q,
            pairs_found: 0,
        });
    }
    Ok(SearchOutcome {
        pairs,
        convergents_tried: tried,
        largest_q,
    })
}

fn absorb(
    pairs: &mut Vec<SolutionPair>,
    seen: &mut HashMap<(BigInt, BigInt), ()>,
    found: Vec<SolutionPair>,
    limit: usize,
) {
    for pair in found {
        if pairs.len() >= limit {
            return;
        }
        let key = (pair.x.clone(), pair.y.clone());
        if seen.insert(key, ()).is_none() {
            pairs.push(pair);
        }
    }
}

/// Exhaustive oracle: every pair with `x <= x_max`, by indexing PS(alpha)
/// values up to `a x_max + b` and testing `y = a x + b` per member.
pub fn brute_force_solutions(
    a: &BigRational,
    b: &BigRational,
    alpha: &AlphaSpec,
    x_max: &BigUint,
    policy: &PrecisionPolicy,
) -> Result<Vec<SolutionPair>> {
    if x_max.is_zero() {
        return Err(Error::invalid("x_max must be at least 1"));
    }
    normalize(a, b)?;
    let y_max_rat = a * BigRational::from_integer(BigInt::from(x_max.clone())) + b;
    let y_max = y_max_rat.ceil().to_integer().magnitude().clone();
    let n_hi = pscore::rank(alpha, &y_max.max(BigUint::one()), policy)?;
    if n_hi.bits() > 27 {
        return Err(Error::MemoryBudget(format!(
            "oracle index would need {n_hi} terms"
        )));
    }
    let terms = pscore::segment(alpha, &BigUint::one(), &n_hi, policy)?;
    let index: HashMap<BigUint, BigUint> = terms
        .iter()
        .map(|t| (t.value.clone(), t.n.clone()))
        .collect();
    let mut out = Vec::new();
    for t in &terms {
        if &t.value > x_max {
            break;
        }
        let y_rat = a * BigRational::from_integer(BigInt::from(t.value.clone())) + b;
        if !y_rat.is_integer() {
            continue;
        }
        let y = y_rat.to_integer().magnitude().clone();
        if let Some(n_y) = index.get(&y) {
            out.push(SolutionPair {
                x: BigInt::from(t.value.clone()),
                y: BigInt::from(y),
                n_x: t.n.clone(),
                n_y: n_y.clone(),
                provenance: Provenance::BruteForce,
            });
        }
    }
    Ok(out)
}

/// The prescribed `gamma` for exponents in `(s, t)`: `2` throughout
/// `1 < alpha < 2`, otherwise `min{s + delta, floor(s) + 1, t}`.
pub fn plan_gamma(alpha: f64, s: f64, t: f64, delta: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::invalid("alpha must exceed 1"));
    }
    if alpha < 2.0 {
        return Ok(2.0);
    }
    if !(2.0 < s && s < t && delta > 0.0) {
        return Err(Error::invalid("need 2 < s < t and delta > 0"));
    }
    Ok((s + delta).min(s.floor() + 1.0).min(t))
}

/// Three-term reduction: solutions of `z = (a/c) x + (b/c)` with `y := 1`
/// solve `a x + b y = c z`.
#[derive(Debug, Clone)]
pub struct ThreeTermReduction {
    pub eq: LinearEquation,
    pub fixed_y: BigUint,
}

pub fn reduce_three_term(a: &BigUint, b: &BigUint, c: &BigUint) -> Result<ThreeTermReduction> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::invalid("a and c must be positive"));
    }
    if a <= b {
        return Err(Error::invalid("requires a > b"));
    }
    if !b.is_multiple_of(&a.gcd(c)) {
        return Err(Error::invalid("requires gcd(a,c) | b"));
    }
    let slope = BigRational::new(BigInt::from(a.clone()), BigInt::from(c.clone()));
    let offset = BigRational::new(BigInt::from(b.clone()), BigInt::from(c.clone()));
    let eq = normalize(&slope, &offset)?;
    Ok(ThreeTermReduction {
        eq,
        fixed_y: BigUint::one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> AlphaSpec {
        AlphaSpec::parse(s).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalize_examples() {
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        assert_eq!(
            (eq.c.to_u64(), eq.d.to_u64(), eq.e.to_u64()),
            (Some(1), Some(2), Some(0))
        );
        assert!(eq.solvable);
        let eq = normalize(&rat(3, 1), &rat(1, 1)).unwrap();
        assert_eq!(
            (eq.c.to_u64(), eq.d.to_u64(), eq.e.to_u64()),
            (Some(1), Some(3), Some(1))
        );
        let eq = normalize(&rat(3, 2), &rat(1, 2)).unwrap();
        assert_eq!(
            (eq.c.to_u64(), eq.d.to_u64(), eq.e.to_u64()),
            (Some(4), Some(6), Some(2))
        );
        assert!(eq.solvable);
        assert!(normalize(&rat(1, 1), &rat(0, 1)).is_err());
        assert!(normalize(&rat(2, 1), &rat(-1, 1)).is_err());
    }

    #[test]
    fn base_solution_examples() {
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        let bs = base_solution(&eq).unwrap();
        assert_eq!((bs.u, bs.v), (BigInt::zero(), BigInt::zero()));
        let eq = normalize(&rat(3, 1), &rat(1, 1)).unwrap();
        let bs = base_solution(&eq).unwrap();
        assert_eq!((bs.u, bs.v), (BigInt::one(), BigInt::zero()));
        let eq = normalize(&rat(3, 2), &rat(1, 2)).unwrap();
        let bs = base_solution(&eq).unwrap();
        assert_eq!((bs.u, bs.v), (BigInt::from(2), BigInt::one()));
    }

    #[test]
    fn target_interval_examples() {
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        let bs = base_solution(&eq).unwrap();
        let i = target_interval(&eq, &bs, &rat(1, 10)).unwrap();
        assert_eq!(i.lo, rat(1, 20));
        assert_eq!(i.hi, rat(9, 20));
        let eq = normalize(&rat(3, 1), &rat(1, 1)).unwrap();
        let bs = base_solution(&eq).unwrap();
        let i = target_interval(&eq, &bs, &rat(1, 10)).unwrap();
        assert_eq!(i.lo, rat(1, 3) + rat(1, 30));
        assert_eq!(i.hi, rat(2, 3) - rat(1, 30));
        // epsilon at the boundary is rejected
        assert!(target_interval(&eq, &bs, &rat(2, 3)).is_err());
    }

    #[test]
    fn small_convergent_fails_exact_gate() {
        // (8,5) for 2^(2/3): x=3 passes the filter but floor(24^1.5)=117
        // misses 2*floor(15^1.5)=116
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        let al = alpha("1.5");
        let bs = base_solution(&eq).unwrap();
        let mut params = SearchParams::defaults(&eq, &al).unwrap();
        params.epsilon = rat(1, 10);
        let i = target_interval(&eq, &bs, &params.epsilon).unwrap();
        let seq =
            dioph::convergents(&rat(2, 1), &al, 4, &params.policy).unwrap();
        let conv = &seq.convergents[3];
        assert_eq!(conv.q, BigUint::from(5u32));
        let rep = scan_window(&eq, &al, conv, &i, &params).unwrap();
        assert!(rep.filter_pass >= 1);
        assert_eq!(rep.verified, 0);
    }

    #[test]
    fn find_solutions_half_alpha() {
        let al = alpha("1.5");
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        let mut params = SearchParams::defaults(&eq, &al).unwrap();
        params.limit = 3;
        let out = find_solutions(&rat(2, 1), &rat(0, 1), &al, &params).unwrap();
        assert!(out.pairs.len() >= 3);
        for p in &out.pairs {
            assert_eq!(p.y, &p.x * 2);
            assert_eq!(
                pscore::member(p.x.magnitude(), &al, &params.policy).unwrap(),
                p.n_x
            );
            assert_eq!(
                pscore::member(p.y.magnitude(), &al, &params.policy).unwrap(),
                p.n_y
            );
        }
    }

    #[test]
    fn find_solutions_exact_branch() {
        let al = alpha("logquot:2:4:3");
        let eq = normalize(&rat(2, 1), &rat(0, 1)).unwrap();
        let mut params = SearchParams::defaults(&eq, &al).unwrap();
        params.limit = 3;
        let out = find_solutions(&rat(2, 1), &rat(0, 1), &al, &params).unwrap();
        assert_eq!(out.pairs.len(), 3);
        for p in &out.pairs {
            assert_eq!(p.y, &p.x * 2);
        }
    }

    #[test]
    fn brute_force_examples() {
        let al = alpha("1.5");
        let policy = PrecisionPolicy::default();
        let pairs =
            brute_force_solutions(&rat(2, 1), &rat(0, 1), &al, &BigUint::from(100u32), &policy)
                .unwrap();
        let xy: Vec<(i64, i64)> = pairs
            .iter()
            .map(|p| (p.x.to_i64().unwrap(), p.y.to_i64().unwrap()))
            .collect();
        assert!(xy.contains(&(11, 22)));
        assert!(xy.contains(&(1, 2)));
        for p in &pairs {
            assert_eq!(p.y, &p.x * 2);
        }
        assert!(
            brute_force_solutions(&rat(1, 1), &rat(0, 1), &al, &BigUint::from(10u32), &policy)
                .is_err()
        );
    }

    #[test]
    fn plan_gamma_examples() {
        assert_eq!(plan_gamma(1.5, 1.0, 2.0, 0.1).unwrap(), 2.0);
        assert_eq!(plan_gamma(2.4, 2.3, 3.1, 0.2).unwrap(), 2.5);
        assert_eq!(plan_gamma(3.0, 2.9, 3.5, 0.3).unwrap(), 3.0);
        assert!(plan_gamma(0.9, 2.3, 3.1, 0.2).is_err());
    }

    #[test]
    fn reduce_three_term_examples() {
        let r = reduce_three_term(
            &BigUint::from(2u32),
            &BigUint::from(1u32),
            &BigUint::from(1u32),
        )
        .unwrap();
        assert_eq!(r.eq.a, rat(2, 1));
        assert_eq!(r.eq.b, rat(1, 1));
        assert_eq!(r.fixed_y, BigUint::one());
        let r = reduce_three_term(
            &BigUint::from(4u32),
            &BigUint::from(2u32),
            &BigUint::from(2u32),
        )
        .unwrap();
        assert_eq!(r.eq.a, rat(2, 1));
        assert_eq!(r.eq.b, rat(1, 1));
        assert!(reduce_three_term(
            &BigUint::from(2u32),
            &BigUint::from(3u32),
            &BigUint::from(1u32)
        )
        .is_err());
    }
}
