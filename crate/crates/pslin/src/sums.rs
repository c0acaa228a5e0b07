//! Search for triples `(k, l, m)` whose seven sums
//! `k, l, m, k+l, l+m, m+k, k+l+m` all lie in `PS(alpha)`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::certreal::{AlphaSpec, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::pscore;

/// A verified triple with the PS indices of all seven sums, in the order
/// `k, l, m, k+l, l+m, m+k, k+l+m`.
#[derive(Debug, Clone)]
pub struct SevenSumTriple {
    pub k: BigUint,
    pub l: BigUint,
    pub m: BigUint,
    pub witnesses: [BigUint; 7],
    /// some of k, l, m coincide; the corollary's N^3 permits this
    pub degenerate: bool,
}

/// All triples with `k <= l <= m <= bound` whose seven sums are PS(alpha)
/// members, ordered by ascending `k+l+m` then lexicographically, truncated
/// to `limit`. The membership index covers values up to `3*bound`.
pub fn find_triples(
    alpha: &AlphaSpec,
    bound: &BigUint,
    limit: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<SevenSumTriple>> {
    if bound.is_zero() {
        return Err(Error::invalid("bound must be at least 1"));
    }
    let top = bound * 3u32;
    let n_hi = pscore::rank(alpha, &top, policy)?;
    if n_hi.bits() > 24 {
        return Err(Error::MemoryBudget(format!(
            "membership index would need {n_hi} terms"
        )));
    }
    let terms = pscore::segment(alpha, &BigUint::one(), &n_hi, policy)?;
    let index: HashMap<BigUint, BigUint> = terms
        .iter()
        .map(|t| (t.value.clone(), t.n.clone()))
        .collect();
    let members: Vec<&BigUint> = terms
        .iter()
        .map(|t| &t.value)
        .filter(|v| *v <= bound)
        .collect();

    let mut found: Vec<SevenSumTriple> = members
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &k)| {
            let mut local = Vec::new();
            for (j, &l) in members[i..].iter().enumerate() {
                let kl = k + l;
                if index.get(&kl).is_none() {
                    continue;
                }
                for &m in &members[i + j..] {
                    let lm = l + m;
                    let mk = m + k;
                    let klm = &kl + m;
                    let (w_kl, w_lm, w_mk, w_klm) = match (
                        index.get(&kl),
                        index.get(&lm),
                        index.get(&mk),
                        index.get(&klm),
                    ) {
                        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
                        _ => continue,
                    };
                    local.push(SevenSumTriple {
                        k: k.clone(),
                        l: l.clone(),
                        m: m.clone(),
                        witnesses: [
                            index[k].clone(),
                            index[l].clone(),
                            index[m].clone(),
                            w_kl.clone(),
                            w_lm.clone(),
                            w_mk.clone(),
                            w_klm.clone(),
                        ],
                        degenerate: k == l || l == m,
                    });
                }
            }
            local
        })
        .collect();
    found.sort_by(|a, b| {
        let sa = &a.k + &a.l + &a.m;
        let sb = &b.k + &b.l + &b.m;
        sa.cmp(&sb)
            .then_with(|| a.k.cmp(&b.k))
            .then_with(|| a.l.cmp(&b.l))
            .then_with(|| a.m.cmp(&b.m))
    });
    found.truncate(limit);
    Ok(found)
}
