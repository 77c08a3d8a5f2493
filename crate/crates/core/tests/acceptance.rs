//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime (run with `--nocapture` to see them).
//!
//! Runtime budgets are asserted in release builds only; debug builds check
//! all the mathematics but skip the wall-clock assertions.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use padic_lq::dirichlet::DirichletCharacter;
use padic_lq::lfunc::{EvalOptions, LqEvaluator};
use padic_lq::padic::PadicContext;
use padic_lq::qeuler::{
    classical_euler_numbers, classical_relation_check, gen_q_euler_poly, q_euler_numbers,
    reduce_rational, sum_identity_check, QEulerCache, QParam,
};
use padic_lq::qmeasure::{fermionic_integral_approx, lq_via_integral, IntegrandSpec};

fn ctx(p: u64, n: u32) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn finish(criterion: u32, what: &str, started: Instant, budget_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("criterion {criterion:2}: PASS — {what} ({elapsed:.2} s)");
    if !cfg!(debug_assertions) {
        assert!(
            elapsed < budget_secs,
            "criterion {criterion} exceeded its {budget_secs} s budget: {elapsed:.2} s"
        );
    }
}

/// The three characters of the theorem grid at a given context.
fn grid_characters(c: PadicContext) -> Vec<(&'static str, DirichletCharacter)> {
    vec![
        ("trivial", DirichletCharacter::trivial(c)),
        ("quadratic mod 3", DirichletCharacter::quadratic(c, 3).unwrap()),
        ("omega", DirichletCharacter::teichmuller_char(c)),
    ]
}

/// q values 1, 1+p, 1+p² as integers.
fn grid_q_values(p: u64) -> [i64; 3] {
    [1, 1 + p as i64, 1 + (p * p) as i64]
}

#[test]
fn criterion_01_teichmuller_suite() {
    let t0 = Instant::now();
    for p in [3u64, 5, 7, 13] {
        let c = ctx(p, 30);
        for a in 1..p {
            let w = c.teichmuller(&BigInt::from(a)).unwrap();
            // ω(a)^(p-1) ≡ 1 mod p^30 exactly
            let root = w.pow_i(p as i64 - 1).unwrap();
            assert_eq!(
                root.residue(30).unwrap(),
                num_bigint::BigUint::from(1u32),
                "p = {p}, a = {a}: ω(a)^(p-1)"
            );
            // ω(a) ≡ a mod p
            assert_eq!(
                w.residue(1).unwrap(),
                num_bigint::BigUint::from(a),
                "p = {p}, a = {a}: first digit"
            );
        }
    }
    finish(1, "Teichmüller roots of unity at N = 30 for p ∈ {3,5,7,13}", t0, 1.0);
}

#[test]
fn criterion_02_backend_equivalence() {
    let t0 = Instant::now();
    let c = ctx(5, 25);
    let exact = q_euler_numbers(QParam::rational(rat(6, 1), 5).unwrap(), 12).unwrap();
    let padic = q_euler_numbers(QParam::padic(c.from_integer(6)).unwrap(), 12).unwrap();
    for n in 0..=12 {
        let reduced = reduce_rational(c, exact.value(n)).unwrap();
        assert_eq!(&reduced, padic.value(n), "E*_{n} at q = 6, all digits");
    }
    finish(2, "exact and p-adic E*_{n,6} agree mod 5^25 for n ≤ 12", t0, 1.0);
}

#[test]
fn criterion_03_recurrence_and_classical_limit() {
    let t0 = Instant::now();
    let cache = q_euler_numbers(QParam::rational(rat(1, 1), 5).unwrap(), 12).unwrap();
    // recurrence at q = 1: Σ_{k≤n} C(n,k) E*_k + E*_n = 2·[n = 0]
    for n in 1..=12usize {
        let mut sum = rat(0, 1);
        for (k, e) in cache.values()[..=n].iter().enumerate() {
            let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
            sum += BigRational::from_integer(c) * e;
        }
        assert!(num_traits::Zero::is_zero(&(&sum + cache.value(n))), "n = {n}");
    }
    // E_n = Σ 2^m C(n,m) E*_m for n ≤ 12, and the first values
    assert!(classical_relation_check(12));
    let e = classical_euler_numbers(12);
    assert_eq!(e[0], rat(1, 1));
    assert_eq!(e[1], rat(0, 1));
    assert_eq!(e[2], rat(-1, 1));
    finish(3, "q = 1 recurrence and E_n = Σ 2^m C(n,m) E*_m for n ≤ 12", t0, 1.0);
}

#[test]
fn criterion_04_sum_identity() {
    let t0 = Instant::now();
    let c = ctx(5, 10);
    let characters = [
        DirichletCharacter::trivial(c),
        DirichletCharacter::quadratic(c, 3).unwrap(),
    ];
    for chi in &characters {
        for q in [
            QParam::rational(rat(1, 1), 5).unwrap(),
            QParam::rational(rat(6, 1), 5).unwrap(),
        ] {
            for m in 1..=6usize {
                for n in 1..=4u64 {
                    for t in [rat(0, 1), rat(1, 1), rat(1, 2)] {
                        let (lhs, rhs) = sum_identity_check(chi, &q, m, n, &t).unwrap();
                        assert_eq!(lhs, rhs, "χ mod {}, m={m}, n={n}", chi.modulus());
                    }
                }
            }
        }
    }
    // anchor: q = 1, trivial χ, t = 0, m = 2, dn = 5 gives -15 on both sides
    let (lhs, rhs) = sum_identity_check(
        &DirichletCharacter::trivial(c),
        &QParam::rational(rat(1, 1), 5).unwrap(),
        2,
        5,
        &rat(0, 1),
    )
    .unwrap();
    assert_eq!(lhs, rat(-15, 1));
    assert_eq!(rhs, rat(-15, 1));
    finish(4, "alternating power-sum identity, exact on the full grid", t0, 5.0);
}

#[test]
fn criterion_05_distribution_relation() {
    let t0 = Instant::now();
    let c = ctx(5, 25);
    let chi = DirichletCharacter::quadratic(c, 3).unwrap();
    let q = QParam::padic(c.from_integer(6)).unwrap();
    for n in 0..=8usize {
        for t in [c.zero(), c.one(), c.from_integer(7)] {
            let v1 = gen_q_euler_poly(&chi, &q, n, &t, 3).unwrap();
            let v2 = gen_q_euler_poly(&chi, &q, n, &t, 9).unwrap();
            let v3 = gen_q_euler_poly(&chi, &q, n, &t, 27).unwrap();
            let a12 = v1.agreement_digits(&v2).unwrap_or(i64::MAX);
            let a23 = v2.agreement_digits(&v3).unwrap_or(i64::MAX);
            assert!(a12 >= 20, "F = 3 vs 9, n = {n}: {a12} digits");
            assert!(a23 >= 20, "F = 9 vs 27, n = {n}: {a23} digits");
        }
    }
    finish(5, "E*_{n,χ,q} invariant under F ∈ {3, 9, 27} to ≥ 20 digits", t0, 5.0);
}

/// Evaluators for the criterion-6 grid, with the given options.
fn theorem_grid(prec: u32, opts: EvalOptions) -> Vec<(u64, i64, String, LqEvaluator)> {
    let mut out = Vec::new();
    for p in [5u64, 7] {
        let c = ctx(p, prec);
        for q_int in grid_q_values(p) {
            let q = QParam::padic(c.from_integer(q_int)).unwrap();
            for (name, chi) in grid_characters(c) {
                let ev = LqEvaluator::with_options(&chi, &q, prec, opts).unwrap();
                out.push((p, q_int, name.to_string(), ev));
            }
        }
    }
    out
}

fn grid_t_values(c: PadicContext) -> [padic_lq::padic::PadicNum; 3] {
    let p = c.p() as i64;
    [c.zero(), c.one(), c.from_integer(2 + 3 * p)]
}

#[test]
fn criterion_06_main_theorem() {
    let t0 = Instant::now();
    let prec = 20u32;
    for (p, q_int, chi_name, ev) in theorem_grid(prec, EvalOptions::default()) {
        let c = ctx(p, prec);
        for n in 0..=6u32 {
            for t in grid_t_values(c) {
                let report = ev.verify_interpolation(n, &t).unwrap();
                assert!(
                    report.agreement_digits >= 15,
                    "p={p} q={q_int} χ={chi_name} n={n}: {} digits",
                    report.agreement_digits
                );
                assert!(
                    report.guard <= 5,
                    "p={p} q={q_int} χ={chi_name} n={n}: guard {}",
                    report.guard
                );
            }
        }
        // anchor: s = 0 with trivial χ equals -q + q^p(1+q)/(1+q^p) on both paths
        if chi_name == "trivial" {
            let q = c.from_integer(q_int);
            let qp = q.pow_i(p as i64).unwrap();
            let closed = &(-&q)
                + &(&qp * &(&c.one() + &q))
                    .checked_div(&(&c.one() + &qp))
                    .unwrap();
            for t in grid_t_values(c) {
                let series = ev.lq_eval(&c.zero(), &t).unwrap();
                let rhs = ev.interpolation_rhs(0, &t).unwrap();
                for v in [&series, &rhs] {
                    let agree = v.agreement_digits(&closed).unwrap_or(i64::MAX);
                    assert!(agree >= 15, "p={p} q={q_int} s=0 anchor: {agree}");
                }
            }
        }
    }
    finish(
        6,
        "interpolation identity ≥ 15 digits on the full (p,q,χ,n,t) grid",
        t0,
        60.0,
    );
}

#[test]
fn criterion_07_one_variable_reduction() {
    let t0 = Instant::now();
    let prec = 20u32;
    for (p, q_int, chi_name, ev) in theorem_grid(prec, EvalOptions::default()) {
        let c = ctx(p, prec);
        for n in 0..=6u32 {
            let series = ev.lq_at_negative_int(n, &c.zero()).unwrap();
            let formula = ev.one_variable_rhs(n).unwrap();
            let agree = series.agreement_digits(&formula).unwrap_or(i64::MAX);
            assert!(
                agree >= 15,
                "p={p} q={q_int} χ={chi_name} n={n}: {agree} digits"
            );
        }
    }
    finish(
        7,
        "t = 0 series values match the one-variable formula ≥ 15 digits",
        t0,
        60.0,
    );
}

#[test]
fn criterion_08_q_one_corollary() {
    let t0 = Instant::now();
    // (a) + (b): analyticity probe and interpolation on the q = 1 slice
    let prec = 20u32;
    for p in [5u64, 7] {
        let c = ctx(p, prec);
        let q = QParam::padic(c.one()).unwrap();
        for (name, chi) in grid_characters(c) {
            let ev = LqEvaluator::new(&chi, &q, prec).unwrap();
            for n in 0..=6u32 {
                for t in grid_t_values(c) {
                    let report = ev.verify_interpolation(n, &t).unwrap();
                    assert!(
                        report.agreement_digits >= 15,
                        "p={p} χ={name} n={n}: {} digits",
                        report.agreement_digits
                    );
                }
            }
            let s1 = c.from_integer(-2);
            let s2 = &s1 + &c.from_integer((p as i64).pow(5));
            let t = c.one();
            let v = ev.analyticity_probe(&s1, &s2, &t).unwrap();
            assert!(v >= 5 - 2, "p={p} χ={name}: s-probe valuation {v}");
            let t2 = &t + &c.from_integer((p as i64).pow(4));
            let a = ev.lq_eval(&s1, &t).unwrap();
            let b = ev.lq_eval(&s1, &t2).unwrap();
            let v = a.agreement_digits(&b).unwrap_or(i64::MAX);
            assert!(v >= 4 - 2, "p={p} χ={name}: t-probe valuation {v}");
        }
    }
    // (c): level sums of the integral representation converge, gap ≥ L - 2
    let int_prec = 12u32;
    for p in [5u64, 7] {
        let c = ctx(p, int_prec);
        let q = QParam::padic(c.one()).unwrap();
        let s = c.from_integer(-2);
        let t = c.one();
        for (name, chi) in grid_characters(c) {
            let ev = LqEvaluator::new(&chi, &q, int_prec).unwrap();
            let series = ev.lq_eval(&s, &t).unwrap();
            for level in 1..=5u32 {
                let sum = lq_via_integral(&s, &t, &chi, &q, level).unwrap();
                let gap = sum.agreement_digits(&series).unwrap_or(i64::MAX);
                assert!(gap >= level as i64 - 2, "p={p} χ={name} L={level}: gap {gap}");
            }
        }
    }
    finish(
        8,
        "q = 1: probe, interpolation with ordinary E*, and integral limits",
        t0,
        30.0,
    );
}

#[test]
fn criterion_09_integral_convergence() {
    let t0 = Instant::now();
    let c = ctx(5, 16);
    let q = QParam::padic(c.from_integer(6)).unwrap();
    let cache = QEulerCache::new(q.clone(), 5).unwrap();
    for n in 0..=5usize {
        for t in [c.zero(), c.one()] {
            let target = padic_lq::qeuler::q_euler_poly(&cache, n, &t);
            let f = IntegrandSpec::monomial(n, t);
            for level in 1..=6u32 {
                let v = fermionic_integral_approx(&f, &q, level).unwrap();
                let gap = v.agreement_digits(&target).unwrap_or(i64::MAX);
                assert!(gap >= level as i64 - 2, "n={n} L={level}: gap {gap}");
            }
        }
    }
    finish(
        9,
        "v_p(I^{(L)}((t+a)^n) - E*_{n,q}(t)) ≥ L - 2 for L ≤ 6, n ≤ 5",
        t0,
        10.0,
    );
}

#[test]
fn criterion_10_truncation_soundness() {
    let t0 = Instant::now();
    let prec = 20u32;
    let base = theorem_grid(prec, EvalOptions::default());
    for (p, q_int, chi_name, ev) in base {
        let c = ctx(p, prec);
        let hardened = EvalOptions {
            f_multiplier: 1,
            m_terms: Some(2 * ev.m_terms()),
            extra_guard: 10,
        };
        let q = QParam::padic(c.from_integer(q_int)).unwrap();
        let chi = ev.character().at_context(c).unwrap();
        let ev_hi = LqEvaluator::with_options(&chi, &q, prec, hardened).unwrap();
        for n in [0u32, 3, 6] {
            for t in grid_t_values(c) {
                let v = ev.lq_at_negative_int(n, &t).unwrap();
                let v_hi = ev_hi.lq_at_negative_int(n, &t).unwrap();
                let claimed = v.abs_precision().unwrap_or(prec as i64);
                assert!(
                    v.eq_mod(&v_hi, claimed),
                    "p={p} q={q_int} χ={chi_name} n={n}: digit changed below claim"
                );
            }
        }
    }
    finish(
        10,
        "doubling M and adding 10 guard digits changes no claimed digit",
        t0,
        60.0,
    );
}
