//! Continued-fraction machinery around the target value `a^(1/alpha)`:
//! certified convergents, gamma-quality approximation witnesses, witness
//! extraction from solution pairs, and construction of exponents with
//! `a^(1/alpha)` exactly rational.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::certreal::ball::Ball;
use crate::certreal::{AlphaForm, AlphaSpec, CertifiedReal, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::pscore;
use crate::solver::{LinearEquation, SolutionPair};

/// A continued-fraction convergent `p/q` of the target, with a certified
/// enclosure of the approximation error `|a^(1/alpha) - p/q|`.
#[derive(Debug, Clone)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigUint,
    pub err: CertifiedReal,
}

/// Convergents plus the exact-rational flag of the Remark-1 branch: when the
/// target itself is rational, the expansion is finite and `exact` carries it.
#[derive(Debug, Clone)]
pub struct ConvergentSeq {
    pub convergents: Vec<Convergent>,
    pub exact: Option<BigRational>,
}

/// Query for `gamma`-quality approximations with bounded denominator.
#[derive(Debug, Clone)]
pub struct WitnessQuery {
    pub a: BigRational,
    pub alpha: AlphaSpec,
    pub gamma: f64,
    pub q_max: BigUint,
}

impl WitnessQuery {
    pub fn validate(&self) -> Result<()> {
        if !self.a.is_positive() || self.a.is_one() {
            return Err(Error::invalid("witness target base must be positive and != 1"));
        }
        if self.gamma <= 1.0 {
            return Err(Error::invalid("gamma must exceed 1"));
        }
        if self.q_max.is_zero() {
            return Err(Error::invalid("q_max must be positive"));
        }
        Ok(())
    }
}

/// `Some(r)` when `a^(1/alpha)` is exactly the rational `r`.
pub fn exact_target(a: &BigRational, alpha: &AlphaSpec) -> Option<BigRational> {
    match alpha.form() {
        AlphaForm::Rational(r) => {
            // a^(q/p) rational iff numerator and denominator of a are
            // perfect p-th powers (gcd(p,q)=1)
            let p = r.numer().magnitude().to_u32()?;
            let q = r.denom().magnitude().to_u64()?;
            let na = a.numer().magnitude();
            let da = a.denom().magnitude();
            if p as u64 > na.bits().max(da.bits()) + 1 {
                return None;
            }
            let rn = na.nth_root(p);
            let rd = da.nth_root(p);
            if rn.pow(p) != *na || rd.pow(p) != *da {
                return None;
            }
            let bound = 1u64 << 20;
            if q.saturating_mul(rn.bits().max(rd.bits()).max(1)) > bound {
                return None;
            }
            Some(BigRational::new(
                BigInt::from(rn.pow(q as u32)),
                BigInt::from(rd.pow(q as u32)),
            ))
        }
        AlphaForm::LogQuot { base, num, den } => {
            // a^(1/alpha) = (num/den)^j when a = base^j
            let ratio = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
            for (target, inverted) in [(a.clone(), false), (a.recip(), true)] {
                let mut power = base.clone();
                let mut j: u32 = 1;
                while power.numer().magnitude().bits() <= target.numer().magnitude().bits() + 1
                    && power.denom().magnitude().bits()
                        <= target.denom().magnitude().bits() + 1
                {
                    if power == target {
                        let v = rational_pow(&ratio, j);
                        return Some(if inverted { v.recip() } else { v });
                    }
                    power *= base;
                    j += 1;
                    if j > 4096 {
                        break;
                    }
                }
            }
            None
        }
    }
}

fn rational_pow(r: &BigRational, k: u32) -> BigRational {
    BigRational::new(r.numer().pow(k), r.denom().pow(k))
}

/// Enclosure of `a^(1/alpha)` at the given precision.
pub(crate) fn target_ball(a: &BigRational, alpha: &AlphaSpec, prec: u32) -> Result<Ball> {
    let work = prec + 32;
    let ln_a = Ball::from_rational(a, work)
        .ln()
        .ok_or_else(|| Error::invalid("target base must be positive"))?;
    let inv = alpha.inverse_enclosure(work);
    Ok(ln_a.mul(&inv).exp().with_prec(prec))
}

/// How far to expand the continued fraction.
enum Extent {
    Count(usize),
    QMax(BigUint),
}

/// The first `count` convergents of `a^(1/alpha)`.
pub fn convergents(
    a: &BigRational,
    alpha: &AlphaSpec,
    count: usize,
    policy: &PrecisionPolicy,
) -> Result<ConvergentSeq> {
    expand(a, alpha, Extent::Count(count), policy)
}

/// All convergents with `q <= q_max`.
pub fn convergents_q_bounded(
    a: &BigRational,
    alpha: &AlphaSpec,
    q_max: &BigUint,
    policy: &PrecisionPolicy,
) -> Result<ConvergentSeq> {
    expand(a, alpha, Extent::QMax(q_max.clone()), policy)
}

fn expand(
    a: &BigRational,
    alpha: &AlphaSpec,
    extent: Extent,
    policy: &PrecisionPolicy,
) -> Result<ConvergentSeq> {
    if !a.is_positive() || a.is_one() {
        return Err(Error::invalid("target base must be positive and != 1"));
    }
    if let Some(x) = exact_target(a, alpha) {
        let quots = rational_cf(&x);
        let convs = build_convergents(&quots, &extent);
        let convs = convs
            .into_iter()
            .map(|(p, q)| {
                let pq = BigRational::new(p.clone(), BigInt::from(q.clone()));
                let err = (&x - pq).abs();
                Convergent {
                    p,
                    q,
                    err: CertifiedReal::from_rational(&err, 64),
                }
            })
            .collect();
        return Ok(ConvergentSeq {
            convergents: convs,
            exact: Some(x),
        });
    }
    // irrational target: certified partial quotients by endpoint agreement
    let mut prec = policy.start.max(128);
    loop {
        let ball = target_ball(a, alpha, prec)?;
        let lo = ball.lo_rational();
        let hi = ball.hi_rational();
        let quots = agreed_quotients(&lo, &hi, &extent);
        if let Some(quots) = quots {
            let convs = build_convergents(&quots, &extent);
            let err_prec = prec;
            let xb = target_ball(a, alpha, err_prec)?;
            let convs = convs
                .into_iter()
                .map(|(p, q)| {
                    let pq = Ball::from_ratio(&p, &BigInt::from(q.clone()), err_prec);
                    let err = xb.sub(&pq).abs();
                    Convergent {
                        p,
                        q,
                        err: CertifiedReal::from_ball(err),
                    }
                })
                .collect();
            return Ok(ConvergentSeq {
                convergents: convs,
                exact: None,
            });
        }
        if prec >= policy.cap {
            return Err(Error::PrecisionOverflow {
                cap: policy.cap,
                context: "continued-fraction expansion stalled".into(),
            });
        }
        prec = (prec * 2).min(policy.cap);
    }
}

/// Partial quotients certain for every point of `[lo, hi]`; `None` when the
/// enclosure runs out of agreement before the extent is satisfied.
fn agreed_quotients(lo: &BigRational, hi: &BigRational, extent: &Extent) -> Option<Vec<BigInt>> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let mut quots = Vec::new();
    let mut q_prev = BigUint::zero();
    let mut q_cur = BigUint::one();
    loop {
        if satisfied(&quots, &q_cur, extent) {
            return Some(quots);
        }
        let fl = lo.floor();
        let fh = hi.floor();
        if fl != fh {
            return None;
        }
        let a = fl.to_integer();
        // denominator recurrence mirrors build_convergents
        if quots.is_empty() {
            // q0 = 1
        } else {
            let next = a.magnitude() * &q_cur + &q_prev;
            q_prev = std::mem::replace(&mut q_cur, next);
        }
        quots.push(a.clone());
        let frac_lo = &lo - BigRational::from_integer(a.clone());
        let frac_hi = &hi - BigRational::from_integer(a);
        if frac_lo.is_zero() || frac_hi.is_zero() {
            // endpoint hit an integer: cannot certify further quotients
            return None;
        }
        // reciprocal swaps the interval
        let new_lo = frac_hi.recip();
        let new_hi = frac_lo.recip();
        lo = new_lo;
        hi = new_hi;
        if quots.len() > 10_000 {
            return None;
        }
    }
}

fn satisfied(quots: &[BigInt], q_cur: &BigUint, extent: &Extent) -> bool {
    match extent {
        Extent::Count(c) => quots.len() >= *c,
        // one past q_max so truncation below is safe
        Extent::QMax(qm) => q_cur > qm,
    }
}

fn build_convergents(quots: &[BigInt], extent: &Extent) -> Vec<(BigInt, BigUint)> {
    let mut out: Vec<(BigInt, BigUint)> = Vec::new();
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigUint::one());
    let (mut p_cur, mut q_cur) = (BigInt::one(), BigUint::zero());
    for a in quots {
        let p_next = a * &p_cur + &p_prev;
        let q_next = a.magnitude() * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        match extent {
            Extent::Count(c) => {
                if out.len() >= *c {
                    break;
                }
            }
            Extent::QMax(qm) => {
                if &q_cur > qm {
                    break;
                }
            }
        }
        out.push((p_cur.clone(), q_cur.clone()));
    }
    out
}

/// Canonical continued fraction of a rational (finite, last quotient >= 2
/// unless the value is an integer).
fn rational_cf(x: &BigRational) -> Vec<BigInt> {
    let mut quots = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let (q, r) = num_integer::Integer::div_mod_floor(&num, &den);
        quots.push(q);
        if r.is_zero() {
            break;
        }
        num = den;
        den = r;
    }
    quots
}

/// Gamma-quality witnesses `(p, q)` with `|a^(1/alpha) - p/q| <= q^-gamma`
/// and `2 <= q <= q_max`, drawn from the convergents. Denominator 1 is
/// excluded: every real admits the trivial integer approximation.
pub fn gamma_witnesses(
    wq: &WitnessQuery,
    policy: &PrecisionPolicy,
) -> Result<Vec<(BigInt, BigUint)>> {
    wq.validate()?;
    let seq = convergents_q_bounded(&wq.a, &wq.alpha, &wq.q_max, policy)?;
    let gamma = BigRational::from_f64(wq.gamma)
        .ok_or_else(|| Error::invalid("gamma must be finite"))?;
    let mut out = Vec::new();
    for conv in &seq.convergents {
        if conv.q < BigUint::from(2u32) {
            continue;
        }
        let exact_err = seq.exact.as_ref().map(|x| {
            (x - BigRational::new(conv.p.clone(), BigInt::from(conv.q.clone()))).abs()
        });
        if error_within_power(&wq.a, &wq.alpha, conv, exact_err, &gamma, policy)? {
            out.push((conv.p.clone(), conv.q.clone()));
        }
    }
    Ok(out)
}

/// Certified check of `|x - p/q| <= q^-gamma`.
fn error_within_power(
    a: &BigRational,
    alpha: &AlphaSpec,
    conv: &Convergent,
    exact_err: Option<BigRational>,
    gamma: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<bool> {
    if let Some(e) = &exact_err {
        if e.is_zero() {
            return Ok(true);
        }
    }
    let neg_gamma = -gamma.clone();
    let mut prec = policy.start;
    loop {
        let work = prec + 32;
        let rhs = Ball::exact_int(BigInt::from(conv.q.clone()), work)
            .ln()
            .expect("q >= 1")
            .mul(&Ball::from_rational(&neg_gamma, work))
            .exp()
            .with_prec(prec);
        let lhs = match &exact_err {
            Some(e) => Ball::from_rational(e, prec),
            None => {
                let xb = target_ball(a, alpha, prec)?;
                let pq = Ball::from_ratio(&conv.p, &BigInt::from(conv.q.clone()), prec);
                xb.sub(&pq).abs()
            }
        };
        match lhs.try_cmp(&rhs) {
            Some(std::cmp::Ordering::Less) => return Ok(true),
            Some(std::cmp::Ordering::Greater) => return Ok(false),
            _ => {}
        }
        if prec >= policy.cap {
            return Err(Error::PrecisionOverflow {
                cap: policy.cap,
                context: format!("comparing |x - {}/{}| with q^-gamma", conv.p, conv.q),
            });
        }
        prec = (prec * 2).min(policy.cap);
    }
}

/// Recover the PS indices of a verified pair and test the upper-proposition
/// inequality `|a^(1/alpha) - p/q| <= q^-beta`, `p`/`q` being the indices of
/// `y`/`x`.
pub fn solution_to_witness(
    pair: &SolutionPair,
    eq: &LinearEquation,
    alpha: &AlphaSpec,
    beta: f64,
    policy: &PrecisionPolicy,
) -> Result<((BigUint, BigUint), bool)> {
    // precondition: the pair really solves y = ax + b
    let x_rat = BigRational::from_integer(pair.x.clone());
    let y_rat = BigRational::from_integer(pair.y.clone());
    if y_rat != &eq.a * &x_rat + &eq.b {
        return Err(Error::invalid("pair does not solve the equation"));
    }
    let p = pscore::member(pair.y.magnitude(), alpha, policy)?;
    let q = pscore::member(pair.x.magnitude(), alpha, policy)?;
    let conv = Convergent {
        p: BigInt::from(p.clone()),
        q: q.clone(),
        err: CertifiedReal::from_rational(&BigRational::zero(), 64), // unused
    };
    let exact_err = exact_target(&eq.a, alpha).map(|x| {
        (&x - BigRational::new(conv.p.clone(), BigInt::from(conv.q.clone()))).abs()
    });
    let beta_rat =
        BigRational::from_f64(beta).ok_or_else(|| Error::invalid("beta must be finite"))?;
    let ok = error_within_power(&eq.a, alpha, &conv, exact_err, &beta_rat, policy)?;
    Ok(((p, q), ok))
}

/// Outcome of the Remark-1 exponent construction.
#[derive(Debug, Clone)]
pub enum ConstructOutcome {
    Alpha(AlphaSpec),
    OutOfRange { approx: f64 },
}

/// Build `alpha = ln(a) / ln(p/q)` (so that `a^(1/alpha) = p/q` exactly) and
/// check it lands in the open range `(s, t)` and is non-integral.
pub fn construct_solvable_alpha(
    a: &BigRational,
    p: &BigUint,
    q: &BigUint,
    range: (&BigRational, &BigRational),
    policy: &PrecisionPolicy,
) -> Result<ConstructOutcome> {
    let alpha = AlphaSpec::logquot(a.clone(), p.clone(), q.clone())?;
    let (s, t) = range;
    if s >= t {
        return Err(Error::invalid("empty range"));
    }
    let mut prec = policy.start;
    loop {
        let enc = alpha.enclosure(prec);
        let sb = Ball::from_rational(s, prec);
        let tb = Ball::from_rational(t, prec);
        match (enc.try_cmp(&sb), enc.try_cmp(&tb)) {
            (Some(std::cmp::Ordering::Greater), Some(std::cmp::Ordering::Less)) => {
                return Ok(ConstructOutcome::Alpha(alpha));
            }
            (Some(std::cmp::Ordering::Less), _) | (_, Some(std::cmp::Ordering::Greater)) => {
                return Ok(ConstructOutcome::OutOfRange { approx: enc.to_f64() });
            }
            _ => {}
        }
        if prec >= policy.cap {
            return Err(Error::PrecisionOverflow {
                cap: policy.cap,
                context: "range check for constructed alpha".into(),
            });
        }
        prec = (prec * 2).min(policy.cap);
    }
}
