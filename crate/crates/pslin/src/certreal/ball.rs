//! Dyadic interval arithmetic: the engine behind every certified decision.
//!
//! A [`Ball`] stores two big-integer mantissas `lo <= hi` at a fixed binary
//! precision `prec`; the represented real lies in `[lo*2^-prec, hi*2^-prec]`.
//! All operations round outwards, so enclosures are sound by construction.
//! `ln` and `exp` are computed by argument reduction plus truncated series
//! with explicit tail bounds.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

/// Guard bits used by the transcendental kernels on top of the requested
/// output precision.
const GUARD: u32 = 32;

/// `x >> s` rounding towards negative infinity.
pub(crate) fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // num-bigint's Shr is an arithmetic shift (floor); asserted in tests.
    x >> s
}

/// `x >> s` rounding towards positive infinity.
pub(crate) fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-a, b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub(crate) lo: BigInt,
    pub(crate) hi: BigInt,
    pub(crate) prec: u32,
}

impl Ball {
    pub fn exact_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let m: BigInt = v.into() << prec;
        Ball { lo: m.clone(), hi: m, prec }
    }

    /// Enclosure of `num/den`, `den > 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        debug_assert!(den.is_positive());
        let shifted = num << prec;
        Ball {
            lo: floor_div(&shifted, den),
            hi: ceil_div(&shifted, den),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Ball::from_ratio(r.numer(), r.denom(), prec)
    }

    /// Exact enclosure `[lo, hi]` from raw mantissas.
    pub(crate) fn from_mantissas(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Ball { lo, hi, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Rational endpoints of the enclosure.
    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.prec + 1))
    }

    /// Radius as a rational; `0` for a pinned value.
    pub fn rad_rational(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << (self.prec + 1))
    }

    pub fn to_f64(&self) -> f64 {
        // mid in f64; fine for diagnostics, never for decisions
        ratio_to_f64(&(&self.lo + &self.hi), self.prec + 1)
    }

    pub fn rad_f64(&self) -> f64 {
        ratio_to_f64(&(&self.hi - &self.lo), self.prec + 1)
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo_rational() <= r && r <= &self.hi_rational()
    }

    /// Change precision, keeping the enclosure sound.
    pub fn with_prec(&self, prec: u32) -> Ball {
        if prec == self.prec {
            self.clone()
        } else if prec > self.prec {
            let s = prec - self.prec;
            Ball { lo: &self.lo << s, hi: &self.hi << s, prec }
        } else {
            let s = self.prec - prec;
            Ball {
                lo: shr_floor(&self.lo, s),
                hi: shr_ceil(&self.hi, s),
                prec,
            }
        }
    }

    pub fn add(&self, rhs: &Ball) -> Ball {
        let (a, b) = align(self, rhs);
        Ball { lo: a.lo + b.lo, hi: a.hi + b.hi, prec: a.prec }
    }

    pub fn sub(&self, rhs: &Ball) -> Ball {
        let (a, b) = align(self, rhs);
        Ball { lo: a.lo - b.hi, hi: a.hi - b.lo, prec: a.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn abs(&self) -> Ball {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = std::cmp::max((-&self.lo).clone(), self.hi.clone());
            Ball { lo: BigInt::zero(), hi, prec: self.prec }
        }
    }

    pub fn mul(&self, rhs: &Ball) -> Ball {
        let (a, b) = align(self, rhs);
        let prec = a.prec;
        let cands = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = cands.iter().min().unwrap();
        let max = cands.iter().max().unwrap();
        Ball {
            lo: shr_floor(min, prec),
            hi: shr_ceil(max, prec),
            prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        if k.is_negative() {
            Ball { lo: &self.hi * k, hi: &self.lo * k, prec: self.prec }
        } else {
            Ball { lo: &self.lo * k, hi: &self.hi * k, prec: self.prec }
        }
    }

    /// Division; the denominator interval must exclude zero.
    pub fn div(&self, rhs: &Ball) -> Option<Ball> {
        if !rhs.lo.is_positive() && !rhs.hi.is_negative() {
            return None; // straddles zero
        }
        let (a, b) = align(self, rhs);
        let prec = a.prec;
        let num_lo = &a.lo << prec;
        let num_hi = &a.hi << prec;
        let mut lo_best: Option<BigInt> = None;
        let mut hi_best: Option<BigInt> = None;
        for num in [&num_lo, &num_hi] {
            for den in [&b.lo, &b.hi] {
                let f = floor_div(num, den);
                let c = ceil_div(num, den);
                lo_best = Some(match lo_best {
                    Some(v) => std::cmp::min(v, f),
                    None => f,
                });
                hi_best = Some(match hi_best {
                    Some(v) => std::cmp::max(v, c),
                    None => c,
                });
            }
        }
        Some(Ball { lo: lo_best.unwrap(), hi: hi_best.unwrap(), prec })
    }

    pub fn div_uint(&self, k: &BigUint) -> Ball {
        let k = BigInt::from(k.clone());
        Ball {
            lo: floor_div(&self.lo, &k),
            hi: ceil_div(&self.hi, &k),
            prec: self.prec,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `Some(floor(x))` when every point of the enclosure has that floor.
    pub fn floor_decided(&self) -> Option<BigInt> {
        let fl = shr_floor(&self.lo, self.prec);
        let fh = shr_floor(&self.hi, self.prec);
        if fl == fh {
            Some(fl)
        } else {
            None
        }
    }

    /// Compare against another enclosure: `Some(Ordering)` when disjoint.
    pub fn try_cmp(&self, rhs: &Ball) -> Option<std::cmp::Ordering> {
        let (a, b) = align(self, rhs);
        if a.hi < b.lo {
            Some(std::cmp::Ordering::Less)
        } else if a.lo > b.hi {
            Some(std::cmp::Ordering::Greater)
        } else {
            None
        }
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    pub fn ln(&self) -> Option<Ball> {
        if !self.lo.is_positive() {
            return None;
        }
        let prec = self.prec;
        let (llo, _) = ln_mantissa(&self.lo, prec);
        let (_, lhi) = ln_mantissa(&self.hi, prec);
        Some(Ball { lo: llo, hi: lhi, prec })
    }

    pub fn exp(&self) -> Ball {
        let prec = self.prec;
        let (elo, _) = exp_mantissa(&self.lo, prec);
        let (_, ehi) = exp_mantissa(&self.hi, prec);
        Ball { lo: elo, hi: ehi, prec }
    }

    /// `self^rhs` for a strictly positive base: `exp(rhs * ln(self))`.
    pub fn pow(&self, rhs: &Ball) -> Option<Ball> {
        Some(self.ln()?.mul(rhs).exp())
    }
}

fn align(a: &Ball, b: &Ball) -> (Ball, Ball) {
    let prec = a.prec.max(b.prec);
    (a.with_prec(prec), b.with_prec(prec))
}

fn ratio_to_f64(m: &BigInt, prec: u32) -> f64 {
    // scale down so the conversion stays in f64 range
    let bits = m.bits() as i64;
    if bits <= 900 {
        m.to_f64().unwrap_or(0.0) / 2f64.powi(prec as i32)
    } else {
        let s = (bits - 64) as u32;
        let top = shr_floor(m, s);
        top.to_f64().unwrap_or(0.0) * 2f64.powi(s as i32 - prec as i32)
    }
}

/// `ln(m * 2^-prec)` for `m > 0`: returns sound lower/upper mantissas at `prec`.
fn ln_mantissa(m: &BigInt, prec: u32) -> (BigInt, BigInt) {
    debug_assert!(m.is_positive());
    let work = prec + GUARD;
    // x = t * 2^e with t in [0.75, 1.5)
    let bits = m.bits() as i64;
    let mut e = bits - prec as i64;
    let s = work as i64 - bits;
    let mut t_lo = shift_signed(m, s);
    let mut t_hi = shift_signed_ceil(m, s);
    let three_quarters = (BigInt::from(3u32)) << (work - 2);
    if t_lo < three_quarters {
        t_lo <<= 1;
        t_hi <<= 1;
        e -= 1;
    }
    // z = (t-1)/(t+1) is increasing in t, |z| <= 1/5
    let one = BigInt::one() << work;
    let zl = floor_div(&((&t_lo - &one) << work), &(&t_lo + &one));
    let zh = ceil_div(&((&t_hi - &one) << work), &(&t_hi + &one));
    let (s_lo, _) = atanh_series(&zl, work);
    let (_, s_hi) = atanh_series(&zh, work);
    // ln x = 2*atanh(z) + e*ln2
    let (ln2_lo, ln2_hi) = ln2_mantissa(work);
    let e_big = BigInt::from(e);
    let (c_lo, c_hi) = if e >= 0 {
        (&e_big * &ln2_lo, &e_big * &ln2_hi)
    } else {
        (&e_big * &ln2_hi, &e_big * &ln2_lo)
    };
    let lo = (&s_lo << 1) + c_lo;
    let hi = (&s_hi << 1) + c_hi;
    let s = work - prec;
    (shr_floor(&lo, s) - 1, shr_ceil(&hi, s) + 1)
}

fn shift_signed(m: &BigInt, s: i64) -> BigInt {
    if s >= 0 {
        m << (s as u32)
    } else {
        shr_floor(m, (-s) as u32)
    }
}

fn shift_signed_ceil(m: &BigInt, s: i64) -> BigInt {
    if s >= 0 {
        m << (s as u32)
    } else {
        shr_ceil(m, (-s) as u32)
    }
}

/// `atanh(z)` by series for a mantissa `z` at `work` bits, `|z| <= 1/3`.
/// Returns sound lower/upper mantissas.
fn atanh_series(z: &BigInt, work: u32) -> (BigInt, BigInt) {
    let mut sum = z.clone();
    let zsq_lo = {
        let sq = z * z;
        shr_floor(&sq, work)
    };
    let mut pow = z.clone();
    let mut k: u32 = 1;
    let mut err = BigInt::from(4u32); // z and zsq truncations
    loop {
        k += 2;
        pow = shr_floor(&(&pow * &zsq_lo), work);
        let term = floor_div(&pow, &BigInt::from(k));
        err += 2u32; // one mul + one div truncation per term
        if term.magnitude().is_zero() {
            break;
        }
        sum += &term;
        if k > 8 * work {
            break; // cannot happen for |z| <= 1/3; belt and braces
        }
    }
    // geometric tail bound: |z^k| <= 2^-work already, remaining < 2 ulps
    err += 2u32;
    (&sum - &err, &sum + &err)
}

static LN2_CACHE: Lazy<Mutex<HashMap<u32, (BigInt, BigInt)>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Sound enclosure mantissas of `ln 2` at `work` bits: `2*atanh(1/3)`.
fn ln2_mantissa(work: u32) -> (BigInt, BigInt) {
    if let Some(v) = LN2_CACHE.lock().unwrap().get(&work) {
        return v.clone();
    }
    let one = BigInt::one() << work;
    let z_lo = floor_div(&one, &BigInt::from(3u32));
    let z_hi = ceil_div(&one, &BigInt::from(3u32));
    let (a_lo, _) = atanh_series(&z_lo, work);
    let (_, a_hi) = atanh_series(&z_hi, work);
    let v = ((&a_lo << 1) - 1, (&a_hi << 1) + 1);
    LN2_CACHE.lock().unwrap().insert(work, v.clone());
    v
}

/// `exp(m * 2^-prec)`: sound lower/upper mantissas at `prec`.
/// The exponent magnitude is limited to keep results representable.
fn exp_mantissa(m: &BigInt, prec: u32) -> (BigInt, BigInt) {
    let work = prec + GUARD;
    let x = shift_signed(m, GUARD as i64); // exact
    // k = nearest integer to x / ln2
    let x_f = ratio_to_f64(&x, work);
    assert!(
        x_f.abs() < 2.0e7,
        "exp argument out of supported range: {x_f}"
    );
    let k = (x_f / std::f64::consts::LN_2).round() as i64;
    let (ln2_lo, ln2_hi) = ln2_mantissa(work);
    let k_big = BigInt::from(k);
    // r = x - k*ln2, r in roughly [-0.36, 0.36]
    let (r_lo, r_hi) = if k >= 0 {
        (&x - &k_big * &ln2_hi, &x - &k_big * &ln2_lo)
    } else {
        (&x - &k_big * &ln2_lo, &x - &k_big * &ln2_hi)
    };
    let (e_lo, _) = exp_series(&r_lo, work);
    let (_, e_hi) = exp_series(&r_hi, work);
    // result = exp(r) * 2^k, rescaled to prec
    let shift = k - GUARD as i64;
    let lo = shift_signed(&e_lo, shift) - 1;
    let hi = shift_signed_ceil(&e_hi, shift) + 1;
    (lo, hi)
}

/// `exp(r)` by Taylor series for `|r| <= 0.5` (mantissa at `work` bits).
fn exp_series(r: &BigInt, work: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << work;
    let mut sum = &one + r;
    let mut term = r.clone();
    let mut n: u32 = 1;
    let mut err = BigInt::from(2u32);
    loop {
        n += 1;
        term = floor_div(&shr_floor(&(&term * r), work), &BigInt::from(n));
        err += 2u32;
        if term.magnitude().is_zero() {
            break;
        }
        sum += &term;
        if n > 4 * work {
            break;
        }
    }
    err += 2u32; // tail: next term below one ulp and ratio < 1/2
    (&sum - &err, &sum + &err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shr_is_floor_for_negatives() {
        assert_eq!(shr_floor(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_ceil(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(shr_floor(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(shr_ceil(&BigInt::from(5), 1), BigInt::from(3));
    }

    fn assert_contains(b: &Ball, v: f64) {
        // v is only f64-accurate; the ball is far tighter
        assert!(
            (b.to_f64() - v).abs() < 1e-14,
            "ball mid {} vs {v}",
            b.to_f64()
        );
        assert!(b.rad_f64() < 1e-12, "radius too wide: {}", b.rad_f64());
    }

    #[test]
    fn ln_enclosures() {
        let b = Ball::exact_int(2, 128).ln().unwrap();
        assert_contains(&b, std::f64::consts::LN_2);
        let b = Ball::exact_int(10, 128).ln().unwrap();
        assert_contains(&b, std::f64::consts::LN_10);
        let half = Ball::from_ratio(&BigInt::one(), &BigInt::from(2), 128);
        assert_contains(&half.ln().unwrap(), -std::f64::consts::LN_2);
    }

    #[test]
    fn exp_enclosures() {
        let b = Ball::exact_int(1, 128).exp();
        assert_contains(&b, std::f64::consts::E);
        let b = Ball::exact_int(-3, 128).exp();
        assert_contains(&b, (-3f64).exp());
        let b = Ball::exact_int(0, 128).exp();
        assert_contains(&b, 1.0);
        // a larger argument: exp(20)
        let b = Ball::exact_int(20, 160).exp();
        let r = b.mid_rational();
        let approx = r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap();
        assert!((approx - 20f64.exp()).abs() / 20f64.exp() < 1e-12);
    }

    #[test]
    fn pow_matches_f64() {
        // 5^1.5
        let base = Ball::exact_int(5, 128);
        let expo = Ball::from_ratio(&BigInt::from(3), &BigInt::from(2), 128);
        let p = base.pow(&expo).unwrap();
        assert!((p.to_f64() - 5f64.powf(1.5)).abs() < 1e-10);
        assert!(p.rad_f64() < 1e-25);
    }

    #[test]
    fn interval_ops_round_outward() {
        let a = Ball::from_ratio(&BigInt::one(), &BigInt::from(3), 64);
        let b = Ball::from_ratio(&BigInt::one(), &BigInt::from(7), 64);
        let exact = BigRational::new(BigInt::from(10), BigInt::from(21));
        assert!(a.add(&b).contains_rational(&exact));
        let exact = BigRational::new(BigInt::one(), BigInt::from(21));
        assert!(a.mul(&b).contains_rational(&exact));
        let exact = BigRational::new(BigInt::from(7), BigInt::from(3));
        assert!(a.div(&b).unwrap().contains_rational(&exact));
    }

    #[test]
    fn refinement_narrows() {
        let mk = |p: u32| {
            Ball::exact_int(7, p)
                .ln()
                .unwrap()
                .mul(&Ball::from_ratio(&BigInt::from(3), &BigInt::from(2), p))
                .exp()
        };
        let coarse = mk(64);
        let fine = mk(128);
        assert!(fine.rad_rational() <= coarse.rad_rational());
        // enclosures must be consistent
        assert!(coarse.lo_rational() <= fine.hi_rational());
        assert!(fine.lo_rational() <= coarse.hi_rational());
    }
}
