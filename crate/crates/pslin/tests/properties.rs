//! Randomized invariants: enclosure soundness, generation/membership
//! round-trips, the Dirichlet property of convergents, interval positivity,
//! and the integer-form identity of the equation pipeline.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use pslin::certreal::{self, AlphaSpec, PrecisionPolicy};
use pslin::dioph;
use pslin::pscore;
use pslin::solver;

fn arb_alpha() -> impl Strategy<Value = AlphaSpec> {
    prop_oneof![
        (11u32..=19).prop_map(|n| AlphaSpec::parse(&format!("1.{n}")).unwrap()),
        (4u32..=9).prop_map(|d| AlphaSpec::parse(&format!("rat:{}/{}", d + 3, d)).unwrap()),
        Just(AlphaSpec::parse("logquot:2:4:3").unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosure_soundness(alpha in arb_alpha(), n in 1u64..1_000_000) {
        let nb = BigUint::from(n);
        let coarse = certreal::eval_pow(&nb, &alpha, 64).unwrap();
        let fine = certreal::eval_pow(&nb, &alpha, 256).unwrap();
        // the reference midpoint must be inside the coarse enclosure
        prop_assert!(coarse.contains(&fine.mid()));
        prop_assert!(fine.rad() <= coarse.rad());
    }

    #[test]
    fn generation_membership_round_trip(alpha in arb_alpha(), n in 1u64..50_000) {
        let policy = PrecisionPolicy::default();
        let nb = BigUint::from(n);
        let v = certreal::certified_floor_pow(&nb, &alpha, &policy).unwrap();
        let back = pscore::member(v.value().magnitude(), &alpha, &policy).unwrap();
        prop_assert_eq!(back, nb);
    }

    #[test]
    fn convergents_satisfy_dirichlet(
        num in 2u32..40,
        den in 1u32..40,
        count in 3usize..10,
    ) {
        prop_assume!(num != den);
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assume!(!a.is_one());
        let alpha = AlphaSpec::parse("1.5").unwrap();
        let policy = PrecisionPolicy::default();
        let seq = dioph::convergents(&a, &alpha, count, &policy).unwrap();
        for c in &seq.convergents {
            let q2 = BigRational::new(BigInt::one(), BigInt::from(&c.q * &c.q));
            let err_hi = c.err.mid() + c.err.rad();
            prop_assert!(err_hi < q2, "q={} err_hi={} 1/q^2={}", c.q, err_hi, q2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn target_interval_positive(
        a_extra in 1u32..60,
        a_den in 1u32..60,
        b_num in 0u32..60,
        eps_scale in 1u32..=49,
    ) {
        // a > 1 by construction; b shares a's denominator so the
        // equation is always solvable over the integers, and b < 1 <= a
        let a = BigRational::new(BigInt::from(a_den + a_extra), BigInt::from(a_den));
        let a2 = a.denom().clone();
        let b = BigRational::new(BigInt::from(b_num) % &a2, a2);
        let eq = solver::normalize(&a, &b).unwrap();
        prop_assert!(eq.solvable);
        let base = solver::base_solution(&eq).unwrap();
        // identity c u - d v = e with v in range
        let (c, d, e) = (
            BigInt::from(eq.c.clone()),
            BigInt::from(eq.d.clone()),
            BigInt::from(eq.e.clone()),
        );
        prop_assert_eq!(&c * &base.u - &d * &base.v, e.clone());
        prop_assert!(!base.v.is_negative() && base.v < c);
        // any epsilon strictly inside (0, min(1/2, 1 - e/d)) keeps the
        // interval fat; at 1/2 and beyond the trimmed band collapses
        let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
        let gap_d = BigRational::one()
            - BigRational::new(e, BigInt::from(eq.d.clone()));
        let gap = if gap_d < half { gap_d } else { half };
        let eps = &gap * BigRational::new(BigInt::from(eps_scale), BigInt::from(100u32));
        let i = solver::target_interval(&eq, &base, &eps).unwrap();
        prop_assert!(i.lo < i.hi);
        prop_assert!(!i.lo.is_negative());
        prop_assert!(i.hi <= BigRational::one());
        prop_assert!(i.diameter().is_positive());
    }

    #[test]
    fn normalize_identity_on_solutions(
        a_extra in 1u32..30,
        a_den in 1u32..30,
        b_num in 0u32..30,
        t in 1u64..10_000,
    ) {
        // b over a's denominator keeps gcd(c, d) | e
        let a = BigRational::new(BigInt::from(a_den + a_extra), BigInt::from(a_den));
        let b = BigRational::new(BigInt::from(b_num), a.denom().clone());
        let eq = solver::normalize(&a, &b).unwrap();
        prop_assert!(eq.solvable);
        let base = solver::base_solution(&eq).unwrap();
        // walk the solution lattice: X = v + (c/g) t, Y = u + (d/g) t
        let c = BigInt::from(eq.c.clone());
        let d = BigInt::from(eq.d.clone());
        let g = num_integer::Integer::gcd(&c, &d);
        let t = BigInt::from(t);
        let x = &base.v + (&c / &g) * &t;
        let y = &base.u + (&d / &g) * &t;
        prop_assert_eq!(&c * &y - &d * &x, BigInt::from(eq.e));
        // the integer form characterizes the rational equation exactly
        let y_rat = &a * BigRational::from_integer(x) + &b;
        prop_assert_eq!(y_rat, BigRational::from_integer(y));
    }
}
