//! Property tests for the arithmetic invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_lq::dirichlet::DirichletCharacter;
use padic_lq::padic::PadicContext;
use padic_lq::qeuler::{
    q_euler_numbers, reduce_rational, sum_identity_check, QParam, Scalar,
};

fn ctx(p: u64, n: u32) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(13)]
}

/// Rational q = 1 + p·k/u with u coprime to p, so v_p(q-1) ≥ 1.
fn valid_q(p: u64) -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=9)
        .prop_filter("denominator must be a p-unit", move |(_, u)| {
            !(*u as u64).is_multiple_of(p)
        })
        .prop_map(move |(k, u)| {
            BigRational::from_integer(BigInt::from(1))
                + BigRational::new(BigInt::from(p as i64 * k), BigInt::from(u))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn padic_ring_axioms_at_precision(
        p in small_prime(),
        x in -10_000i64..10_000,
        y in -10_000i64..10_000,
        z in -10_000i64..10_000,
    ) {
        let c = ctx(p, 12);
        let (a, b, d) = (c.from_integer(x), c.from_integer(y), c.from_integer(z));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
    }

    #[test]
    fn padic_precision_honesty(
        p in small_prime(),
        x in 1i64..100_000,
        y in 1i64..100_000,
    ) {
        // recomputing at higher working precision and reducing agrees with
        // the lower-precision result on all digits the lower run claimed
        let lo = ctx(p, 6);
        let hi = ctx(p, 18);
        let ops_lo = [
            &lo.from_integer(x) + &lo.from_integer(y),
            &lo.from_integer(x) * &lo.from_integer(y),
            lo.from_integer(x).checked_div(&lo.from_integer(y)).unwrap(),
        ];
        let ops_hi = [
            &hi.from_integer(x) + &hi.from_integer(y),
            &hi.from_integer(x) * &hi.from_integer(y),
            hi.from_integer(x).checked_div(&hi.from_integer(y)).unwrap(),
        ];
        for (l, h) in ops_lo.iter().zip(ops_hi.iter()) {
            if let (Some(va), Some(vb)) = (l.valuation(), h.valuation()) {
                prop_assert_eq!(va, vb);
                let claim = l.abs_precision().unwrap();
                if claim > va {
                    let k = (claim - va.min(0)).min(l.rel_precision() as i64 + va.max(0));
                    if k > 0 && va >= 0 {
                        prop_assert_eq!(
                            l.residue(k as u32).unwrap(),
                            h.residue(k as u32).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(
        p in small_prime(),
        a in 1u64..1000,
        b in 1u64..1000,
    ) {
        prop_assume!(a % p != 0 && b % p != 0);
        let c = ctx(p, 10);
        let wa = c.teichmuller(&BigInt::from(a)).unwrap();
        let wb = c.teichmuller(&BigInt::from(b)).unwrap();
        let wab = c.teichmuller(&BigInt::from(a * b)).unwrap();
        prop_assert_eq!(&wa * &wb, wab);
    }

    #[test]
    fn pow_s_additive_in_the_exponent(
        p in small_prime(),
        u in 1i64..50,
        s1 in -60i64..60,
        s2 in -60i64..60,
    ) {
        let c = ctx(p, 12);
        let x = c.from_integer(1 + p as i64 * u);
        let lhs = x.pow_s(&c.from_integer(s1 + s2)).unwrap();
        let rhs = &x.pow_s(&c.from_integer(s1)).unwrap()
            * &x.pow_s(&c.from_integer(s2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_euler_recurrence_holds_for_random_q(q in valid_q(5)) {
        let param = QParam::rational(q.clone(), 5).unwrap();
        let cache = q_euler_numbers(param, 8).unwrap();
        for n in 1..=8usize {
            let mut sum = BigRational::from_integer(BigInt::from(0));
            for (k, e) in cache.values()[..=n].iter().enumerate() {
                let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
                sum += BigRational::from_integer(c) * e;
            }
            let residual = &q * sum + cache.value(n);
            prop_assert!(num_traits::Zero::is_zero(&residual));
        }
    }

    #[test]
    fn q_euler_backends_agree_for_random_q(q in valid_q(5)) {
        let p = 5u64;
        let c = ctx(p, 12);
        let exact = q_euler_numbers(QParam::rational(q.clone(), p).unwrap(), 8).unwrap();
        let q_padic = reduce_rational(c, &q).unwrap();
        let padic = q_euler_numbers(QParam::padic(q_padic).unwrap(), 8).unwrap();
        for n in 0..=8usize {
            let reduced = reduce_rational(c, exact.value(n)).unwrap();
            prop_assert_eq!(&reduced, padic.value(n));
        }
    }

    #[test]
    fn sum_identity_exact_for_random_inputs(
        q in valid_q(5),
        quadratic in any::<bool>(),
        m in 1usize..=4,
        n in 1u64..=3,
        tn in -6i64..=6,
        td in 1i64..=6,
    ) {
        let c = ctx(5, 10);
        let chi = if quadratic {
            DirichletCharacter::quadratic(c, 3).unwrap()
        } else {
            DirichletCharacter::trivial(c)
        };
        let t = BigRational::new(BigInt::from(tn), BigInt::from(td));
        let param = QParam::rational(q, 5).unwrap();
        let (lhs, rhs) = sum_identity_check(&chi, &param, m, n, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_values_multiply(
        exps in (0u32..4, 0u32..2, 0u32..6),
        a in 1i64..500,
        b in 1i64..500,
    ) {
        let c = ctx(5, 8);
        let chi = DirichletCharacter::from_factors(
            c,
            &[(5, exps.0), (3, exps.1), (7, exps.2)],
        )
        .unwrap();
        let lhs = chi.eval(a * b);
        let rhs = &chi.eval(a) * &chi.eval(b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_scalar_matches_rational_reduction(
        x in 0u64..20,
        u in 1i64..30,
    ) {
        // [x]_q computed p-adically agrees with the exact polynomial value
        let p = 7u64;
        let c = ctx(p, 10);
        let q_rat = BigRational::from_integer(BigInt::from(1 + p as i64 * u));
        let q_pad = c.from_integer(1 + p as i64 * u);
        for sign in [
            padic_lq::qeuler::BracketSign::Plain,
            padic_lq::qeuler::BracketSign::Minus,
        ] {
            let exact = padic_lq::qeuler::bracket(x, &q_rat, sign);
            let padic = padic_lq::qeuler::bracket(x, &q_pad, sign);
            let reduced = reduce_rational(c, &exact).unwrap();
            if Scalar::is_zero(&reduced) {
                prop_assert!(Scalar::is_zero(&padic));
            } else {
                prop_assert_eq!(reduced, padic);
            }
        }
    }
}
