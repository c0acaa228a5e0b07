//! Exact discrepancy of finite point sets in `[0,1)`, the Erdős–Turán
//! upper bound, and the bound shapes steering the window scan: the `k`
//! bracket, the exponents `psi_1`/`psi_2`, and the two-term Lemma-3.1
//! expression. Bound shapes carry unknown implied constants (set to 1) and
//! are for trend comparison only; the discrepancy itself is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::certreal::{self, AlphaSpec, CertifiedReal, PrecisionPolicy};
use crate::certreal::ball::Ball;
use crate::error::{Error, Result};

/// Extreme discrepancy of rational points in `[0,1)` by the sorted-points
/// formula `1/N + max_i(x_(i) - i/N) - min_i(x_(i) - i/N)`.
pub fn exact_discrepancy(points: &[BigRational]) -> Result<BigRational> {
    check_unit_interval(points)?;
    let n = BigRational::from_integer(BigInt::from(points.len()));
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut max_dev: Option<BigRational> = None;
    let mut min_dev: Option<BigRational> = None;
    for (i, x) in sorted.iter().enumerate() {
        let rank = BigRational::from_integer(BigInt::from(i + 1)) / &n;
        let dev = x - rank;
        if max_dev.as_ref().map_or(true, |m| &dev > m) {
            max_dev = Some(dev.clone());
        }
        if min_dev.as_ref().map_or(true, |m| &dev < m) {
            min_dev = Some(dev);
        }
    }
    Ok(n.recip() + max_dev.unwrap() - min_dev.unwrap())
}

fn check_unit_interval(points: &[BigRational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::invalid("discrepancy needs at least one point"));
    }
    if points
        .iter()
        .any(|x| x.is_negative() || x >= &BigRational::one())
    {
        return Err(Error::invalid("points must lie in [0, 1)"));
    }
    Ok(())
}

/// Discrepancy of certified points: the exact formula applied to midpoints,
/// with an error bound from the enclosure radii. When two enclosures
/// overlap the midpoint order is not certain; the first such pair (original
/// indices) is reported and the error bound still covers the true value,
/// since the formula moves by at most twice the largest perturbation.
#[derive(Debug, Clone)]
pub struct CertifiedDiscrepancy {
    pub value: BigRational,
    pub error_bound: BigRational,
    pub ambiguous_pair: Option<(usize, usize)>,
}

pub fn exact_discrepancy_certified(points: &[CertifiedReal]) -> Result<CertifiedDiscrepancy> {
    if points.is_empty() {
        return Err(Error::invalid("discrepancy needs at least one point"));
    }
    let mids: Vec<BigRational> = points.iter().map(|p| p.mid()).collect();
    check_unit_interval(&mids)?;
    let value = exact_discrepancy(&mids)?;
    let max_rad = points
        .iter()
        .map(|p| p.rad())
        .max()
        .unwrap_or_else(BigRational::zero);
    let error_bound = &max_rad + &max_rad;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| mids[i].cmp(&mids[j]));
    let mut ambiguous_pair = None;
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        let gap = &mids[j] - &mids[i];
        if gap < points[i].rad() + points[j].rad() {
            ambiguous_pair = Some((i, j));
            break;
        }
    }
    Ok(CertifiedDiscrepancy {
        value,
        error_bound,
        ambiguous_pair,
    })
}

/// Erdős–Turán upper bound
/// `6/(m+1) + (2/pi) Σ_{h=1}^{m} (1/h - 1/(m+1)) |N^{-1} Σ_n e(h x_n)|`.
pub fn erdos_turan_bound(points: &[f64], m: u32) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::invalid("bound needs at least one point"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let n = points.len() as f64;
    let mut total = 6.0 / (m as f64 + 1.0);
    for h in 1..=m {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &x in points {
            let t = 2.0 * std::f64::consts::PI * (h as f64) * x;
            re += t.cos();
            im += t.sin();
        }
        let amp = (re * re + im * im).sqrt() / n;
        total += (2.0 / std::f64::consts::PI) * (1.0 / h as f64 - 1.0 / (m as f64 + 1.0)) * amp;
    }
    Ok(total)
}

/// Fractional parts of `a * n^alpha` for `n = 1..=n_max`, each certified.
/// Rational values (exact-power hits) come out with radius zero.
pub fn scaled_frac_points(
    a: &BigRational,
    alpha: &AlphaSpec,
    n_max: u64,
    policy: &PrecisionPolicy,
    out_prec: u32,
) -> Result<Vec<CertifiedReal>> {
    if !a.is_positive() {
        return Err(Error::invalid("scale must be positive"));
    }
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let nb = num_bigint::BigUint::from(n);
            if let Some(m) = certreal::exact_pow(&nb, alpha) {
                let v = a * BigRational::from_integer(BigInt::from(m));
                let frac = &v - v.floor();
                return Ok(CertifiedReal::from_rational(&frac, out_prec));
            }
            let eval = |p: u32| {
                let b = certreal::eval_pow(&nb, alpha, p)?;
                Ok(b.ball().mul(&Ball::from_rational(a, p)))
            };
            let fl = certreal::certified_floor_with(
                policy,
                None,
                &format!("floor({a} * {n}^{alpha})"),
                eval,
            )?;
            let prec = out_prec.max(policy.start);
            let frac = eval(prec)?.sub(&Ball::exact_int(fl.value().clone(), prec));
            Ok(CertifiedReal::from_ball(frac.with_prec(out_prec)))
        })
        .collect()
}

/// Exact discrepancy plus Erdős–Turán bounds at the requested `m` values.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    pub n_points: usize,
    pub exact_d: BigRational,
    pub et_bounds: Vec<(u32, f64)>,
    pub notes: String,
}

pub fn report(points: &[BigRational], ms: &[u32], notes: &str) -> Result<DiscrepancyReport> {
    let exact_d = exact_discrepancy(points)?;
    let f64s: Vec<f64> = points.iter().map(|p| p.to_f64().unwrap_or(0.0)).collect();
    let mut et_bounds = Vec::new();
    for &m in ms {
        et_bounds.push((m, erdos_turan_bound(&f64s, m)?));
    }
    Ok(DiscrepancyReport {
        n_points: points.len(),
        exact_d,
        et_bounds,
        notes: notes.to_string(),
    })
}

/// The exponent pair behind the Lemma-3.2 discrepancy decay, with
/// `psi = max(psi_1/(2^k - 1), psi_2)`.
#[derive(Debug, Clone)]
pub struct BoundExponents {
    pub k: u32,
    pub psi1: f64,
    pub psi2: f64,
    pub psi: f64,
    pub negative: bool,
}

fn bracket_holds(alpha: &BigRational, gamma: &BigRational, k: u32) -> bool {
    // gamma (k-3)/(gamma + k - 3) < alpha < gamma k/(k + gamma)
    let kk = BigRational::from_integer(BigInt::from(k));
    let three = BigRational::from_integer(BigInt::from(3));
    let lower = gamma * (&kk - &three) / (gamma + &kk - &three);
    let upper = gamma * &kk / (&kk + gamma);
    &lower < alpha && alpha < &upper
}

/// Smallest `k >= 4` with `gamma (k-3)/(gamma+k-3) < alpha < gamma k/(k+gamma)`,
/// decided in exact rational arithmetic (boundary cases like
/// `alpha = 5/2, gamma = 13/5, k = 65` sit exactly on the strict bound).
pub fn choose_k(alpha: &BigRational, gamma: &BigRational) -> Result<u32> {
    let one = BigRational::one();
    let gap = gamma - alpha;
    if alpha <= &one || !gap.is_positive() || gap >= one {
        return Err(Error::invalid("need alpha > 1 and 0 < gamma - alpha < 1"));
    }
    // the upper inequality first holds past alpha*gamma/(gamma-alpha)
    let k_stop = ((alpha * gamma / gap).ceil().to_integer().to_u32())
        .ok_or_else(|| Error::invalid("gamma - alpha too small"))?
        + 4;
    for k in 4..=k_stop {
        if bracket_holds(alpha, gamma, k) {
            return Ok(k);
        }
    }
    Err(Error::invalid("no admissible k located"))
}

/// The displayed exponents: `psi_1 = alpha + (gamma-alpha-xi)(alpha-k)/alpha`
/// and `psi_2 = -alpha/(2^k-2) + ((gamma-alpha-xi)/alpha)((k-alpha)/(2^k-2) - 4/2^k)`.
pub fn compute_exponents(
    alpha_rat: &BigRational,
    gamma_rat: &BigRational,
    xi: f64,
    k: u32,
) -> Result<BoundExponents> {
    let alpha = alpha_rat.to_f64().ok_or_else(|| Error::invalid("alpha not finite"))?;
    let gamma = gamma_rat.to_f64().ok_or_else(|| Error::invalid("gamma not finite"))?;
    if xi <= 0.0 || gamma - alpha - xi <= 0.0 {
        return Err(Error::invalid("need 0 < xi < gamma - alpha"));
    }
    if k < 4 || !bracket_holds(alpha_rat, gamma_rat, k) {
        return Err(Error::invalid("k violates the bracket inequality"));
    }
    let pk = 2f64.powi(k as i32);
    let w = (gamma - alpha - xi) / alpha;
    let psi1 = alpha + (gamma - alpha - xi) * (alpha - k as f64) / alpha;
    let psi2 = -alpha / (pk - 2.0) + w * ((k as f64 - alpha) / (pk - 2.0) - 4.0 / pk);
    let psi = (psi1 / (pk - 1.0)).max(psi2);
    Ok(BoundExponents {
        k,
        psi1,
        psi2,
        psi,
        negative: psi < 0.0,
    })
}

/// The two-term Lemma-3.1 bound shape with implied constant 1, plus the `m`
/// that the proof substitutes.
#[derive(Debug, Clone)]
pub struct Lemma31Bound {
    pub value: f64,
    pub m: u64,
}

pub fn lemma31_bound(eta: f64, v: f64, alpha: f64, k: u32) -> Result<Lemma31Bound> {
    if eta <= 0.0 || v < 1.0 || k < 4 {
        return Err(Error::invalid("need eta > 0, V >= 1, k >= 4"));
    }
    let premise = eta * v.powf(alpha - k as f64);
    if premise >= 1.0 {
        return Err(Error::invalid("requires eta * V^(alpha-k) < 1"));
    }
    let pk = 2f64.powi(k as i32);
    let term1 = premise.powf(1.0 / (pk - 1.0));
    let term2 = eta.powf(-1.0 / (pk - 2.0))
        * v.powf((k as f64 - alpha) / (pk - 2.0) - 4.0 / pk);
    let m = ((v.powf(k as f64 - alpha) / eta).powf(1.0 / (pk - 1.0))).ceil() as u64;
    Ok(Lemma31Bound {
        value: term1 + term2,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Supremum over critical intervals with endpoints at sample points or
    /// 0/1, both interval closures taken in the limit.
    fn oracle_discrepancy(points: &[BigRational]) -> BigRational {
        let n = BigRational::from_integer(BigInt::from(points.len()));
        let mut ends: Vec<BigRational> = points.to_vec();
        ends.push(BigRational::zero());
        ends.push(BigRational::one());
        ends.sort();
        ends.dedup();
        let mut best = BigRational::zero();
        for i in 0..ends.len() {
            // j = i covers the sup over shrinking intervals around one point
            for j in i..ends.len() {
                let (a, b) = (&ends[i], &ends[j]);
                let len = b - a;
                let closed = points.iter().filter(|x| *x >= a && *x <= b).count();
                let open = points.iter().filter(|x| *x > a && *x < b).count();
                for cnt in [closed, open] {
                    let dev =
                        (BigRational::from_integer(BigInt::from(cnt)) / &n - &len).abs();
                    if dev > best {
                        best = dev;
                    }
                }
            }
        }
        best
    }

    #[test]
    fn discrepancy_examples() {
        let pts = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)];
        assert_eq!(exact_discrepancy(&pts).unwrap(), rat(1, 4));
        assert_eq!(exact_discrepancy(&[rat(1, 2)]).unwrap(), rat(1, 1));
        assert_eq!(
            exact_discrepancy(&[rat(1, 4), rat(3, 4)]).unwrap(),
            rat(1, 2)
        );
        assert!(exact_discrepancy(&[]).is_err());
        assert!(exact_discrepancy(&[rat(5, 4)]).is_err());
    }

    #[test]
    fn discrepancy_matches_interval_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let n = 1 + trial % 30;
            let pts: Vec<BigRational> = (0..n)
                .map(|_| rat(rng.gen_range(0..1000), 1000))
                .collect();
            let fast = exact_discrepancy(&pts).unwrap();
            let slow = oracle_discrepancy(&pts);
            assert_eq!(fast, slow, "mismatch on {pts:?}");
        }
    }

    #[test]
    fn certified_variant_tracks_rational_truth() {
        let policy = PrecisionPolicy::default();
        let alpha = AlphaSpec::parse("1.5").unwrap();
        let pts = scaled_frac_points(&rat(7, 10), &alpha, 200, &policy, 96).unwrap();
        let cd = exact_discrepancy_certified(&pts).unwrap();
        assert!(cd.error_bound < rat(1, 1_000_000_000));
        assert!(cd.value > rat(1, 200) && cd.value < BigRational::one());
        // kissing enclosures are flagged
        let wide = vec![
            CertifiedReal::from_ball(Ball::from_mantissas(1.into(), 3.into(), 3)),
            CertifiedReal::from_ball(Ball::from_mantissas(2.into(), 4.into(), 3)),
        ];
        let cd = exact_discrepancy_certified(&wide).unwrap();
        assert!(cd.ambiguous_pair.is_some());
    }

    #[test]
    fn erdos_turan_examples() {
        let b = erdos_turan_bound(&[0.0; 50], 1).unwrap();
        assert!((b - (3.0 + 1.0 / std::f64::consts::PI)).abs() < 1e-12);
        let pts = [0.0, 0.25, 0.5, 0.75];
        let b = erdos_turan_bound(&pts, 4).unwrap();
        assert!(b >= 0.25);
        assert!(erdos_turan_bound(&pts, 0).is_err());
    }

    #[test]
    fn erdos_turan_dominates_exact() {
        let policy = PrecisionPolicy::default();
        let alpha = AlphaSpec::parse("1.5").unwrap();
        let pts = scaled_frac_points(&rat(7, 10), &alpha, 300, &policy, 96).unwrap();
        let mids: Vec<BigRational> = pts.iter().map(|p| p.mid()).collect();
        let exact = exact_discrepancy(&mids).unwrap().to_f64().unwrap();
        for m in [1, 10, 100] {
            let f64s: Vec<f64> = mids.iter().map(|p| p.to_f64().unwrap()).collect();
            let bound = erdos_turan_bound(&f64s, m).unwrap();
            assert!(bound >= exact, "m={m}: {bound} < {exact}");
        }
    }

    #[test]
    fn choose_k_examples() {
        assert_eq!(choose_k(&rat(3, 2), &rat(2, 1)).unwrap(), 7);
        assert_eq!(choose_k(&rat(5, 2), &rat(26, 10)).unwrap(), 66);
        assert_eq!(choose_k(&rat(101, 100), &rat(2, 1)).unwrap(), 4);
        assert!(choose_k(&rat(3, 2), &rat(3, 1)).is_err());
        assert!(choose_k(&rat(9, 10), &rat(3, 2)).is_err());
    }

    #[test]
    fn choose_k_bracket_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let alpha = rng.gen_range(1.01..4.0);
            let gamma = alpha + rng.gen_range(0.01..0.99);
            let a = BigRational::from_f64(alpha).unwrap();
            let g = BigRational::from_f64(gamma).unwrap();
            let k = choose_k(&a, &g).unwrap();
            assert!(bracket_holds(&a, &g, k), "alpha={alpha} gamma={gamma} k={k}");
            assert!(k >= 4);
        }
    }

    #[test]
    fn exponents_example() {
        let e = compute_exponents(&rat(3, 2), &rat(2, 1), 0.01, 7).unwrap();
        assert!((e.psi1 - (-0.296_666_666_666_666_6)).abs() < 1e-12);
        assert!((e.psi2 - (-0.007_853_835_978_835_978)).abs() < 1e-12);
        assert!((e.psi - (-0.002_335_958_005_249_3)).abs() < 1e-12);
        assert!(e.negative);
        assert!(compute_exponents(&rat(3, 2), &rat(2, 1), 0.6, 7).is_err());
        assert!(compute_exponents(&rat(3, 2), &rat(2, 1), 0.01, 4).is_err());
    }

    #[test]
    fn lemma31_examples() {
        assert!(lemma31_bound(1.0, 1.0, 1.5, 7).is_err());
        let b4 = lemma31_bound(1.0, 1e4, 1.5, 7).unwrap();
        let b6 = lemma31_bound(1.0, 1e6, 1.5, 7).unwrap();
        assert!(b4.value > 0.0 && b6.value > 0.0);
        assert!(b6.value < b4.value);
        assert!(b4.m >= 1);
    }

    #[test]
    fn report_shape() {
        let pts = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)];
        let r = report(&pts, &[1, 4], "grid").unwrap();
        assert_eq!(r.n_points, 4);
        assert_eq!(r.exact_d, rat(1, 4));
        assert_eq!(r.et_bounds.len(), 2);
        for (_, b) in &r.et_bounds {
            assert!(*b >= 0.25);
        }
    }
}
