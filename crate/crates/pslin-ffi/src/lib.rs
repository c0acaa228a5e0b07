//! C ABI for pslin. Handles are opaque; every call returns an integer
//! status from the `PSLIN_OK` family; results come back as heap-allocated
//! C strings that the caller releases with `pslin_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigUint;
use pslin::certreal::{AlphaSpec, PrecisionPolicy};
use pslin::error::Error;
use pslin::solver::{self, SearchParams};
use pslin::{certreal, pscore};

pub const PSLIN_OK: i32 = 0;
pub const PSLIN_ERR_INVALID_PARAMS: i32 = 1;
pub const PSLIN_ERR_BUDGET_EXHAUSTED: i32 = 2;
pub const PSLIN_ERR_PRECISION_OVERFLOW: i32 = 3;
pub const PSLIN_ERR_NOT_MEMBER: i32 = 4;
pub const PSLIN_ERR_NOT_SOLVABLE: i32 = 5;
pub const PSLIN_ERR_NULL_POINTER: i32 = 6;
pub const PSLIN_ERR_UTF8: i32 = 7;
pub const PSLIN_ERR_PANIC: i32 = 99;

/// Opaque exponent handle: a parsed alpha plus its precision policy.
pub struct PslinAlpha {
    alpha: AlphaSpec,
    policy: PrecisionPolicy,
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) => PSLIN_ERR_INVALID_PARAMS,
        Error::BudgetExhausted { .. } => PSLIN_ERR_BUDGET_EXHAUSTED,
        Error::PrecisionOverflow { .. } => PSLIN_ERR_PRECISION_OVERFLOW,
        Error::NotMember(_) => PSLIN_ERR_NOT_MEMBER,
        Error::NotSolvableInN { .. } => PSLIN_ERR_NOT_SOLVABLE,
        Error::MemoryBudget(_) => PSLIN_ERR_BUDGET_EXHAUSTED,
    }
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        return Err(PSLIN_ERR_NULL_POINTER);
    }
    CStr::from_ptr(p).to_str().map_err(|_| PSLIN_ERR_UTF8)
}

fn give_string(s: String, out: *mut *mut c_char) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PSLIN_OK
        }
        Err(_) => PSLIN_ERR_INVALID_PARAMS,
    }
}

fn guarded<F: FnOnce() -> i32>(f: F) -> i32 {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PSLIN_ERR_PANIC)
}

/// Parse an exponent spec (`1.5`, `rat:3/2`, `logquot:2:4:3`) into a handle.
/// `prec_cap` of 0 selects the default precision cap.
#[no_mangle]
pub unsafe extern "C" fn pslin_alpha_parse(
    spec: *const c_char,
    prec_cap: u32,
    out: *mut *mut PslinAlpha,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return PSLIN_ERR_NULL_POINTER;
        }
        let s = match cstr(spec) {
            Ok(s) => s,
            Err(c) => return c,
        };
        match AlphaSpec::parse(s) {
            Ok(alpha) => {
                let policy = if prec_cap == 0 {
                    PrecisionPolicy::default()
                } else {
                    PrecisionPolicy::with_cap(prec_cap)
                };
                *out = Box::into_raw(Box::new(PslinAlpha { alpha, policy }));
                PSLIN_OK
            }
            Err(e) => code_of(&e),
        }
    })
}

/// Release an exponent handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn pslin_alpha_free(handle: *mut PslinAlpha) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn pslin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `floor(n^alpha)` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn pslin_term(
    handle: *const PslinAlpha,
    n: u64,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            return PSLIN_ERR_NULL_POINTER;
        }
        let h = &*handle;
        if n == 0 {
            return PSLIN_ERR_INVALID_PARAMS;
        }
        match certreal::certified_floor_pow(&BigUint::from(n), &h.alpha, &h.policy) {
            Ok(f) => give_string(f.value().to_string(), out),
            Err(e) => code_of(&e),
        }
    })
}

/// Membership test for a decimal `value`; on success writes its index `n`.
/// Returns `PSLIN_ERR_NOT_MEMBER` when the value is not a term.
#[no_mangle]
pub unsafe extern "C" fn pslin_member(
    handle: *const PslinAlpha,
    value: *const c_char,
    out_n: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if handle.is_null() || out_n.is_null() {
            return PSLIN_ERR_NULL_POINTER;
        }
        let h = &*handle;
        let v = match cstr(value) {
            Ok(s) => s,
            Err(c) => return c,
        };
        let v: BigUint = match v.parse() {
            Ok(v) => v,
            Err(_) => return PSLIN_ERR_INVALID_PARAMS,
        };
        match pscore::member(&v, &h.alpha, &h.policy) {
            Ok(n) => give_string(n.to_string(), out_n),
            Err(e) => code_of(&e),
        }
    })
}

/// Search for up to `limit` verified pairs of `y = a x + b` in PS(alpha).
/// `a` and `b` are rational strings (`p/q` or decimal). The result is a
/// JSON array of `{x, y, n_x, n_y}` objects with decimal-string fields.
#[no_mangle]
pub unsafe extern "C" fn pslin_solve_json(
    handle: *const PslinAlpha,
    a: *const c_char,
    b: *const c_char,
    limit: usize,
    time_budget_secs: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if handle.is_null() || out_json.is_null() {
            return PSLIN_ERR_NULL_POINTER;
        }
        let h = &*handle;
        let (a, b) = match (cstr(a), cstr(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        let run = || -> Result<String, Error> {
            let a = certreal::parse_rational(a)?;
            let b = certreal::parse_rational(b)?;
            let eq = solver::normalize(&a, &b)?;
            let mut params = SearchParams::defaults(&eq, &h.alpha)?;
            params.limit = limit.max(1);
            params.policy = h.policy.clone();
            params.time_budget = std::time::Duration::from_secs(time_budget_secs.max(1));
            let outcome = solver::find_solutions(&a, &b, &h.alpha, &params)?;
            let items: Vec<serde_json::Value> = outcome
                .pairs
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "x": p.x.to_string(),
                        "y": p.y.to_string(),
                        "n_x": p.n_x.to_string(),
                        "n_y": p.n_y.to_string(),
                    })
                })
                .collect();
            Ok(serde_json::Value::Array(items).to_string())
        };
        match run() {
            Ok(s) => give_string(s, out_json),
            Err(e) => code_of(&e),
        }
    })
}
