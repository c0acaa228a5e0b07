//! Adaptive-precision certified real arithmetic for floor decisions on powers.
//!
//! Everything the rest of the crate decides about `n^alpha` goes through this
//! module: enclosures come from [`ball`] interval arithmetic, floors are
//! decided by precision escalation, and for rational exponents an exact
//! integer-root route answers the "is it exactly an integer" question that a
//! floating evaluation never could.

pub mod ball;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use ball::Ball;

/// Largest denominator for which `n^(p/q)` goes through exact integer q-th
/// roots instead of `exp(a ln n)`.
const ROOT_DEN_MAX: u64 = 64;
/// Cap on `p * bits(n)` for the root route, in bits.
const ROOT_BITS_MAX: u64 = 1 << 20;

/// Working-precision policy: geometric escalation from `start` to `cap` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start: 64, cap: 4096 }
    }
}

impl PrecisionPolicy {
    pub fn with_cap(cap: u32) -> Self {
        PrecisionPolicy { start: 64, cap }
    }

    fn overflow(&self, context: &str) -> Error {
        Error::PrecisionOverflow { cap: self.cap, context: context.to_string() }
    }
}

/// A midpoint/radius enclosure of a real number at some working precision.
#[derive(Debug, Clone)]
pub struct CertifiedReal {
    ball: Ball,
}

impl CertifiedReal {
    pub(crate) fn from_ball(ball: Ball) -> Self {
        CertifiedReal { ball }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        CertifiedReal { ball: Ball::from_rational(r, prec) }
    }

    pub fn mid(&self) -> BigRational {
        self.ball.mid_rational()
    }

    pub fn rad(&self) -> BigRational {
        self.ball.rad_rational()
    }

    pub fn prec(&self) -> u32 {
        self.ball.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.ball.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.ball.rad_f64()
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        self.ball.contains_rational(r)
    }

    pub(crate) fn ball(&self) -> &Ball {
        &self.ball
    }
}

/// An exponent `alpha > 1`, non-integral, given exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaForm {
    /// Exact rational exponent (decimal literals land here).
    Rational(BigRational),
    /// `ln(base) / ln(num/den)`: the Remark-1 family with `(num/den)^alpha = base`.
    LogQuot {
        base: BigRational,
        num: BigUint,
        den: BigUint,
    },
}

#[derive(Debug, Clone)]
pub struct AlphaSpec {
    form: AlphaForm,
    display: String,
    /// For log-quotient exponents non-integrality is only refuted up to the
    /// precision cap; `false` here means "trusted after refinement".
    nonintegral_certified: bool,
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

impl AlphaSpec {
    pub fn form(&self) -> &AlphaForm {
        &self.form
    }

    pub fn nonintegral_certified(&self) -> bool {
        self.nonintegral_certified
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.form {
            AlphaForm::Rational(r) => Some(r),
            AlphaForm::LogQuot { .. } => None,
        }
    }

    /// Parse `1.5`, `rat:3/2` or `logquot:2:4:3`.
    pub fn parse(s: &str) -> Result<AlphaSpec> {
        if let Some(rest) = s.strip_prefix("rat:") {
            let r = parse_rational(rest)?;
            return AlphaSpec::from_rational(r);
        }
        if let Some(rest) = s.strip_prefix("logquot:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::invalid("logquot form is logquot:BASE:P:Q"));
            }
            let base = parse_rational(parts[0])?;
            let num: BigUint = parts[1]
                .parse()
                .map_err(|_| Error::invalid("logquot P must be a positive integer"))?;
            let den: BigUint = parts[2]
                .parse()
                .map_err(|_| Error::invalid("logquot Q must be a positive integer"))?;
            return AlphaSpec::logquot(base, num, den);
        }
        AlphaSpec::from_decimal(s)
    }

    /// A decimal literal denotes the exact rational it reads as: `1.5` is `3/2`.
    pub fn from_decimal(s: &str) -> Result<AlphaSpec> {
        let r = parse_decimal(s)?;
        let mut spec = AlphaSpec::from_rational(r)?;
        spec.display = s.to_string();
        Ok(spec)
    }

    pub fn from_rational(r: BigRational) -> Result<AlphaSpec> {
        if r.denom().is_one() {
            return Err(Error::invalid(format!("alpha = {r} is an integer")));
        }
        if r <= BigRational::one() {
            return Err(Error::invalid(format!("alpha = {r} must exceed 1")));
        }
        let display = format!("{}/{}", r.numer(), r.denom());
        Ok(AlphaSpec {
            form: AlphaForm::Rational(r),
            display,
            nonintegral_certified: true,
        })
    }

    /// `alpha = ln(base) / ln(num/den)`, the family with `(num/den)^alpha = base`.
    pub fn logquot(base: BigRational, num: BigUint, den: BigUint) -> Result<AlphaSpec> {
        if !base.is_positive() || base.is_one() {
            return Err(Error::invalid("logquot base must be positive and != 1"));
        }
        if num.is_zero() || den.is_zero() {
            return Err(Error::invalid("logquot ratio must be positive"));
        }
        let ratio = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
        if ratio.is_one() {
            return Err(Error::invalid("logquot ratio must differ from 1 (degenerate)"));
        }
        let one = BigRational::one();
        if (base > one) != (ratio > one) {
            return Err(Error::invalid(
                "logquot base and ratio must lie on the same side of 1",
            ));
        }
        let display = format!("logquot:{}:{}:{}", fmt_rational(&base), num, den);
        let spec = AlphaSpec {
            form: AlphaForm::LogQuot { base, num, den },
            display,
            nonintegral_certified: false,
        };
        spec.validate_logquot()
    }

    /// Enclosure of alpha at the given precision.
    pub fn enclosure(&self, prec: u32) -> Ball {
        match &self.form {
            AlphaForm::Rational(r) => Ball::from_rational(r, prec),
            AlphaForm::LogQuot { base, num, den } => {
                let work = prec + 32;
                let la = Ball::from_rational(base, work).ln().expect("base > 0");
                let ratio = BigRational::new(
                    BigInt::from(num.clone()),
                    BigInt::from(den.clone()),
                );
                let lr = Ball::from_rational(&ratio, work).ln().expect("ratio > 0");
                la.div(&lr).expect("ln(ratio) != 0").with_prec(prec)
            }
        }
    }

    /// Enclosure of `1/alpha`.
    pub fn inverse_enclosure(&self, prec: u32) -> Ball {
        match &self.form {
            AlphaForm::Rational(r) => Ball::from_rational(&r.recip(), prec),
            AlphaForm::LogQuot { .. } => {
                let work = prec + 32;
                Ball::exact_int(1, work)
                    .div(&self.enclosure(work))
                    .expect("alpha > 1")
                    .with_prec(prec)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(64).to_f64()
    }

    /// Check `alpha > 1` and non-integral for the log-quotient form.
    fn validate_logquot(mut self) -> Result<AlphaSpec> {
        let policy = PrecisionPolicy::default();
        let (base, ratio) = match &self.form {
            AlphaForm::LogQuot { base, num, den } => (
                base.clone(),
                BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())),
            ),
            AlphaForm::Rational(_) => unreachable!(),
        };
        let mut prec = policy.start;
        loop {
            let enc = self.enclosure(prec);
            let one = Ball::exact_int(1, prec);
            match enc.try_cmp(&one) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(_) => {
                    return Err(Error::invalid(format!(
                        "alpha = {} is not greater than 1",
                        self.display
                    )))
                }
                None => {
                    // alpha == 1 iff base == ratio, which was excluded; refine
                    if prec >= policy.cap {
                        return Err(self.overflow_ctx(&policy));
                    }
                    prec *= 2;
                    continue;
                }
            }
            // integrality: alpha == k iff ratio^k == base exactly; test every
            // integer the enclosure might pin
            let k_lo = ball::shr_floor(&enc.lo, prec);
            let k_hi = ball::shr_ceil(&enc.hi, prec);
            let mut k = k_lo.clone();
            while k <= k_hi {
                if let Some(k_u32) = k.to_u32() {
                    if k_u32 >= 1 && rational_pow(&ratio, k_u32) == base {
                        return Err(Error::invalid(format!(
                            "alpha = {} equals the integer {k}",
                            self.display
                        )));
                    }
                }
                k += 1;
            }
            if let Some(k) = enc.floor_decided() {
                // enclosure strictly inside (k, k+1)?
                let kb = Ball::exact_int(k.clone(), prec);
                let kb1 = Ball::exact_int(k + 1, prec);
                if enc.try_cmp(&kb) == Some(std::cmp::Ordering::Greater)
                    && enc.try_cmp(&kb1) == Some(std::cmp::Ordering::Less)
                {
                    self.nonintegral_certified = true;
                    return Ok(self);
                }
            }
            if prec >= policy.cap {
                // neither pinned to an integer nor separated: trusted, flagged
                self.nonintegral_certified = false;
                return Ok(self);
            }
            prec *= 2;
        }
    }

    fn overflow_ctx(&self, policy: &PrecisionPolicy) -> Error {
        policy.overflow(&format!("validating alpha = {}", self.display))
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational from `p/q`, a decimal literal, or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational `{s}`")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational `{s}`")))?;
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    } else if s.contains('.') {
        parse_decimal(s)
    } else {
        let num: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational `{s}`")))?;
        Ok(BigRational::from_integer(num))
    }
}

/// Exact rational denoted by a decimal literal.
pub(crate) fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (int_part, frac_part) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("bad decimal `{s}`")));
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num: BigInt = digits
        .parse()
        .map_err(|_| Error::invalid(format!("bad decimal `{s}`")))?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(num, den))
}

fn rational_pow(r: &BigRational, k: u32) -> BigRational {
    BigRational::new(r.numer().pow(k), r.denom().pow(k))
}

/// Result of a certified floor: either a proven floor of a non-pinned value,
/// or a value proven equal to an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloorResult {
    Floor(BigInt),
    ExactInteger(BigInt),
}

impl FloorResult {
    pub fn value(&self) -> &BigInt {
        match self {
            FloorResult::Floor(v) | FloorResult::ExactInteger(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FloorResult::ExactInteger(_))
    }
}

/// Enclosure of `n^alpha` with radius at most a few ulps at `prec`.
pub fn eval_pow(n: &BigUint, alpha: &AlphaSpec, prec: u32) -> Result<CertifiedReal> {
    Ok(CertifiedReal::from_ball(pow_alpha_ball(n, alpha, prec)?))
}

/// `n^alpha` as a ball. For rational exponents with a small denominator this
/// runs through exact integer roots; otherwise `exp(alpha ln n)`.
pub(crate) fn pow_alpha_ball(n: &BigUint, alpha: &AlphaSpec, prec: u32) -> Result<Ball> {
    if n.is_zero() {
        return Err(Error::invalid("n must be positive"));
    }
    if n.is_one() {
        return Ok(Ball::exact_int(1, prec));
    }
    match &alpha.form {
        AlphaForm::Rational(r) => Ok(pow_ratexp_ball(n, r, prec)),
        AlphaForm::LogQuot { .. } => {
            let work = prec + 32;
            let a = alpha.enclosure(work);
            let ln_n = Ball::exact_int(BigInt::from(n.clone()), work)
                .ln()
                .expect("n >= 1");
            Ok(a.mul(&ln_n).exp().with_prec(prec))
        }
    }
}

/// `m^(1/alpha)` as a ball.
pub(crate) fn pow_invalpha_ball(m: &BigUint, alpha: &AlphaSpec, prec: u32) -> Result<Ball> {
    if m.is_zero() {
        return Err(Error::invalid("value must be positive"));
    }
    if m.is_one() {
        return Ok(Ball::exact_int(1, prec));
    }
    match &alpha.form {
        AlphaForm::Rational(r) => Ok(pow_ratexp_ball(m, &r.recip(), prec)),
        AlphaForm::LogQuot { .. } => {
            let work = prec + 32;
            let inv = alpha.inverse_enclosure(work);
            let ln_m = Ball::exact_int(BigInt::from(m.clone()), work)
                .ln()
                .expect("m >= 1");
            Ok(inv.mul(&ln_m).exp().with_prec(prec))
        }
    }
}

/// `n^(p/q)` for a positive rational exponent.
fn pow_ratexp_ball(n: &BigUint, expo: &BigRational, prec: u32) -> Ball {
    debug_assert!(expo.is_positive());
    let p = expo.numer().magnitude();
    let q = expo.denom().magnitude();
    let q64 = q.to_u64();
    let p64 = p.to_u64();
    let feasible = match (p64, q64) {
        (Some(p64), Some(q64)) => {
            q64 <= ROOT_DEN_MAX
                && p64.saturating_mul(n.bits()) <= ROOT_BITS_MAX
                && (q64 as u128) * (prec as u128) <= 1 << 24
        }
        _ => false,
    };
    if feasible {
        let q32 = q64.unwrap() as u32;
        let t = n.pow(p64.unwrap() as u32);
        // floor(t^(1/q) * 2^prec) via one big root extraction
        let shifted = t << ((q32 as usize) * (prec as usize));
        let r = shifted.nth_root(q32);
        let lo = BigInt::from(r.clone());
        // exact power: the root is the value itself
        let hi = if r.pow(q32) == shifted { lo.clone() } else { &lo + 1 };
        Ball::from_mantissas(lo, hi, prec)
    } else {
        let work = prec + 32;
        let e = Ball::from_rational(expo, work);
        let ln_n = Ball::exact_int(BigInt::from(n.clone()), work)
            .ln()
            .expect("n >= 1");
        e.mul(&ln_n).exp().with_prec(prec)
    }
}

/// `Some(k)` when `n^alpha` is exactly the integer `k`.
pub fn exact_pow(n: &BigUint, alpha: &AlphaSpec) -> Option<BigUint> {
    if n.is_one() {
        return Some(BigUint::one());
    }
    match &alpha.form {
        AlphaForm::Rational(r) => {
            let p = r.numer().magnitude();
            let q = r.denom().magnitude();
            // gcd(p, q) = 1, so n^(p/q) is an integer iff n is a perfect q-th power
            let q32 = match q.to_u32() {
                Some(v) => v,
                // a q-th power with q beyond u32 would need n >= 2^q
                None => return None,
            };
            if (q32 as u64) > n.bits() {
                return None;
            }
            let root = n.nth_root(q32);
            if root.pow(q32) != *n {
                return None;
            }
            let p64 = p.to_u64()?;
            if p64.saturating_mul(root.bits().max(1)) > ROOT_BITS_MAX {
                return None; // representable only in theory
            }
            Some(root.pow(p64 as u32))
        }
        AlphaForm::LogQuot { base, num, den } => {
            // n^alpha = base^j when n = (num/den)^j; only integral ratios can
            // produce an integral n
            if !den.is_one() || !base.denom().is_one() {
                return None;
            }
            let r = num;
            if r.is_one() {
                return None;
            }
            let mut power = r.clone();
            let mut j: u32 = 1;
            while power.bits() <= n.bits() {
                if power == *n {
                    return Some(base.numer().magnitude().pow(j));
                }
                power *= r;
                j += 1;
            }
            None
        }
    }
}

/// `Some(k)` when `m^(1/alpha)` is exactly the integer `k`.
pub(crate) fn exact_root(m: &BigUint, alpha: &AlphaSpec) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::one());
    }
    match &alpha.form {
        AlphaForm::Rational(r) => {
            let p = r.numer().magnitude();
            let q = r.denom().magnitude();
            let p32 = p.to_u32()?;
            if (p32 as u64) > m.bits() {
                return None;
            }
            let root = m.nth_root(p32);
            if root.pow(p32) != *m {
                return None;
            }
            let q64 = q.to_u64()?;
            if q64.saturating_mul(root.bits().max(1)) > ROOT_BITS_MAX {
                return None;
            }
            Some(root.pow(q64 as u32))
        }
        AlphaForm::LogQuot { base, num, den } => {
            // m^(1/alpha) = (num/den)^j when m = base^j
            if !base.denom().is_one() || !den.is_one() {
                return None;
            }
            let b = base.numer().magnitude();
            if b.is_one() {
                return None;
            }
            let mut power = b.clone();
            let mut j: u32 = 1;
            while power.bits() <= m.bits() {
                if power == *m {
                    return Some(num.pow(j));
                }
                power *= b;
                j += 1;
            }
            None
        }
    }
}

/// Decide a floor by precision escalation over a re-evaluable expression.
///
/// `exact` short-circuits when the caller has proven the value equal to an
/// integer; without it, a value that happens to be an integer can never be
/// separated from its neighbors and the search would hit the cap.
pub fn certified_floor_with(
    policy: &PrecisionPolicy,
    exact: Option<BigInt>,
    context: &str,
    eval: impl Fn(u32) -> Result<Ball>,
) -> Result<FloorResult> {
    if let Some(v) = exact {
        return Ok(FloorResult::ExactInteger(v));
    }
    let mut prec = policy.start;
    loop {
        let b = eval(prec)?;
        if let Some(f) = b.floor_decided() {
            return Ok(FloorResult::Floor(f));
        }
        if prec >= policy.cap {
            return Err(policy.overflow(context));
        }
        prec = (prec * 2).min(policy.cap);
    }
}

/// Certified `floor(n^alpha)`.
pub fn certified_floor_pow(
    n: &BigUint,
    alpha: &AlphaSpec,
    policy: &PrecisionPolicy,
) -> Result<FloorResult> {
    let exact = exact_pow(n, alpha).map(BigInt::from);
    certified_floor_with(policy, exact, &format!("floor({n}^{alpha})"), |p| {
        pow_alpha_ball(n, alpha, p)
    })
}

/// Certified fractional part of `n^alpha` at the requested output precision,
/// together with the floor it was measured against.
pub fn frac_pow(
    n: &BigUint,
    alpha: &AlphaSpec,
    policy: &PrecisionPolicy,
    out_prec: u32,
) -> Result<(CertifiedReal, BigInt)> {
    let fl = certified_floor_pow(n, alpha, policy)?;
    match fl {
        FloorResult::ExactInteger(k) => Ok((
            CertifiedReal::from_ball(Ball::exact_int(0, out_prec)),
            k,
        )),
        FloorResult::Floor(k) => {
            let prec = out_prec.max(policy.start);
            let b = pow_alpha_ball(n, alpha, prec)?;
            let frac = b.sub(&Ball::exact_int(k.clone(), prec));
            Ok((CertifiedReal::from_ball(frac.with_prec(out_prec)), k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> AlphaSpec {
        AlphaSpec::parse(s).unwrap()
    }

    #[test]
    fn decimal_literals_are_exact_rationals() {
        let a = alpha("1.5");
        assert_eq!(
            a.as_rational().unwrap(),
            &BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        let a = alpha("rat:6/5");
        assert_eq!(
            a.as_rational().unwrap(),
            &BigRational::new(BigInt::from(6), BigInt::from(5))
        );
    }

    #[test]
    fn alpha_validation() {
        assert!(AlphaSpec::parse("2").is_err()); // integral
        assert!(AlphaSpec::parse("1.0").is_err());
        assert!(AlphaSpec::parse("0.5").is_err()); // below 1
        assert!(AlphaSpec::parse("rat:4/2").is_err()); // reduces to 2
        // logquot(4,2,1): ln4/ln2 = 2, integral
        assert!(AlphaSpec::parse("logquot:4:2:1").is_err());
        // degenerate ratio
        assert!(AlphaSpec::parse("logquot:2:3:3").is_err());
        // opposite sides of 1
        assert!(AlphaSpec::parse("logquot:2:1:2").is_err());
        // the Remark-1 exponent ln2/ln(4/3)
        let a = alpha("logquot:2:4:3");
        assert!(a.nonintegral_certified());
        assert!((a.to_f64() - 2.409420839653209).abs() < 1e-12);
    }

    #[test]
    fn eval_pow_examples() {
        let a15 = alpha("1.5");
        // 1^alpha = 1 exactly
        let one = eval_pow(&BigUint::one(), &a15, 64).unwrap();
        assert!(one.rad().is_zero());
        assert_eq!(one.mid(), BigRational::one());
        // 4^1.5 = 8 exactly
        let eight = eval_pow(&BigUint::from(4u32), &a15, 64).unwrap();
        assert!(eight.rad().is_zero());
        assert_eq!(eight.mid(), BigRational::from_integer(BigInt::from(8)));
        // 5^1.5 = 11.180339887498949...; reference at 256 bits
        let v = eval_pow(&BigUint::from(5u32), &a15, 64).unwrap();
        let reference = eval_pow(&BigUint::from(5u32), &a15, 256).unwrap();
        assert!(v.contains(&reference.mid()));
        assert!((v.to_f64() - 11.180339887498949).abs() < 1e-12);
    }

    #[test]
    fn floor_examples() {
        let a15 = alpha("1.5");
        let policy = PrecisionPolicy::default();
        let f = certified_floor_pow(&BigUint::from(2u32), &a15, &policy).unwrap();
        assert_eq!(f, FloorResult::Floor(BigInt::from(2)));
        let f = certified_floor_pow(&BigUint::from(4u32), &a15, &policy).unwrap();
        assert_eq!(f, FloorResult::ExactInteger(BigInt::from(8)));
        // 8^1.5 = sqrt(512) = 22.627...; 512 is not a perfect square
        let f = certified_floor_pow(&BigUint::from(8u32), &a15, &policy).unwrap();
        assert_eq!(f, FloorResult::Floor(BigInt::from(22)));
    }

    #[test]
    fn frac_examples() {
        let a15 = alpha("1.5");
        let policy = PrecisionPolicy::default();
        let (fr, fl) = frac_pow(&BigUint::from(4u32), &a15, &policy, 64).unwrap();
        assert!(fr.rad().is_zero());
        assert!(fr.mid().is_zero());
        assert_eq!(fl, BigInt::from(8));
        let (fr, _) = frac_pow(&BigUint::from(5u32), &a15, &policy, 64).unwrap();
        assert!((fr.to_f64() - 0.18033988749894903).abs() < 1e-12);
        let (fr, _) = frac_pow(&BigUint::from(2u32), &a15, &policy, 64).unwrap();
        assert!((fr.to_f64() - 0.8284271247461903).abs() < 1e-12);
    }

    #[test]
    fn exact_pow_detection() {
        let a15 = alpha("1.5");
        assert_eq!(
            exact_pow(&BigUint::from(4u32), &a15),
            Some(BigUint::from(8u32))
        );
        assert_eq!(exact_pow(&BigUint::from(8u32), &a15), None);
        assert_eq!(
            exact_pow(&BigUint::from(9u32), &alpha("rat:5/2")),
            Some(BigUint::from(243u32))
        );
        // logquot(4,2,1): rejected as integral; use logquot(8,2,1) = 3? also
        // integral. ln9/ln3 = 2 integral. Use alpha = ln8/ln2 -> 3, integral;
        // so take ln(4)/ln(8) < 1. The integral-detection cases all reject,
        // which is the point; a valid non-integral logquot with den=1:
        let a = alpha("logquot:32:4:1"); // ln32/ln4 = 5/2, accepted in logquot form
        assert_eq!(exact_pow(&BigUint::from(2u32), &a), None);
        assert_eq!(
            exact_pow(&BigUint::from(4u32), &a),
            Some(BigUint::from(32u32))
        );
        // 16 = 4^2, so 16^alpha = 32^2
        assert_eq!(
            exact_pow(&BigUint::from(16u32), &a),
            Some(BigUint::from(1024u32))
        );
    }

    #[test]
    fn logquot_long_decimal_pow_path() {
        // a 20-digit decimal exponent forces the exp/ln route
        let a = alpha("1.70710678118654752440");
        let v = eval_pow(&BigUint::from(7u32), &a, 128).unwrap();
        let expect = 7f64.powf(1.7071067811865475);
        assert!((v.to_f64() - expect).abs() / expect < 1e-12);
        let f = certified_floor_pow(&BigUint::from(7u32), &a, &PrecisionPolicy::default())
            .unwrap();
        assert_eq!(f, FloorResult::Floor(BigInt::from(27)));
    }
}
