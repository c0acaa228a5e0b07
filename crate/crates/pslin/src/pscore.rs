//! Generation and membership testing for `PS(alpha) = { floor(n^alpha) }`.
//!
//! Membership is decided by inverting the power: `m` has the (unique) witness
//! `n = ceil(m^(1/alpha))` iff `n^alpha < m + 1`. Scanning is the test oracle,
//! never the implementation.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::certreal::ball::Ball;
use crate::certreal::{
    certified_floor_pow, certified_floor_with, exact_pow, exact_root, pow_alpha_ball,
    pow_invalpha_ball, AlphaSpec, PrecisionPolicy,
};
use crate::error::{Error, Result};

/// One term of the sequence: `value = floor(n^alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsTerm {
    pub n: BigUint,
    pub value: BigUint,
}

/// Certified terms for `n` in `[n_lo, n_hi]`.
pub fn segment(
    alpha: &AlphaSpec,
    n_lo: &BigUint,
    n_hi: &BigUint,
    policy: &PrecisionPolicy,
) -> Result<Vec<PsTerm>> {
    if n_lo.is_zero() || n_lo > n_hi {
        return Err(Error::invalid("need 1 <= n_lo <= n_hi"));
    }
    let count = (n_hi - n_lo + 1u32)
        .to_usize()
        .ok_or_else(|| Error::MemoryBudget("segment too large".into()))?;
    if count > 50_000_000 {
        return Err(Error::MemoryBudget(format!("segment of {count} terms")));
    }
    // parallel by index blocks, merged in index order
    (0..count)
        .into_par_iter()
        .map(|off| {
            let n = n_lo + off;
            let value = certified_floor_pow(&n, alpha, policy)?;
            Ok(PsTerm {
                n,
                value: value.value().magnitude().clone(),
            })
        })
        .collect()
}

/// The unique witness `n` with `floor(n^alpha) = m`, if any.
pub fn member(m: &BigUint, alpha: &AlphaSpec, policy: &PrecisionPolicy) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::invalid("membership is defined for m >= 1"));
    }
    if m.is_one() {
        return Ok(BigUint::one());
    }
    let n = certified_ceil_invpow(m, alpha, policy)?;
    // member iff n^alpha < m + 1
    let m1 = BigInt::from(m + 1u32);
    if let Some(k) = exact_pow(&n, alpha) {
        let k = BigInt::from(k);
        return if k < m1 {
            Ok(n)
        } else {
            Err(Error::NotMember(m.clone()))
        };
    }
    let mut prec = policy.start;
    loop {
        let b = pow_alpha_ball(&n, alpha, prec)?;
        let target = Ball::exact_int(m1.clone(), prec);
        match b.try_cmp(&target) {
            Some(std::cmp::Ordering::Less) => return Ok(n),
            Some(_) => return Err(Error::NotMember(m.clone())),
            None => {
                if prec >= policy.cap {
                    return Err(policy_overflow(policy, &format!("member({m})")));
                }
                prec = (prec * 2).min(policy.cap);
            }
        }
    }
}

/// `#(PS(alpha) ∩ [1, X])`, i.e. the largest `n` with `floor(n^alpha) <= X`.
pub fn rank(alpha: &AlphaSpec, x: &BigUint, policy: &PrecisionPolicy) -> Result<BigUint> {
    if x.is_zero() {
        return Err(Error::invalid("rank is defined for X >= 1"));
    }
    // largest n with n^alpha < X + 1
    let x1 = x + 1u32;
    if let Some(r) = exact_root(&x1, alpha) {
        // (X+1)^(1/alpha) = r exactly; n = r does not qualify
        return Ok(r - 1u32);
    }
    let res = certified_floor_with(
        policy,
        None,
        &format!("rank({x})"),
        |p| pow_invalpha_ball(&x1, alpha, p),
    )?;
    Ok(res.value().magnitude().clone())
}

/// Certified `ceil(m^(1/alpha))` for non-member-decided `m >= 2`.
fn certified_ceil_invpow(
    m: &BigUint,
    alpha: &AlphaSpec,
    policy: &PrecisionPolicy,
) -> Result<BigUint> {
    if let Some(r) = exact_root(m, alpha) {
        return Ok(r);
    }
    let res = certified_floor_with(
        policy,
        None,
        &format!("ceil({m}^(1/alpha))"),
        |p| pow_invalpha_ball(m, alpha, p),
    )?;
    // value is certified non-integral here, so ceil = floor + 1
    let f = res.value();
    debug_assert!(!f.is_negative());
    Ok(f.magnitude() + 1u32)
}

fn policy_overflow(policy: &PrecisionPolicy, context: &str) -> Error {
    Error::PrecisionOverflow {
        cap: policy.cap,
        context: context.to_string(),
    }
}
