//! q-Euler numbers E*_{n,q}, q-Euler polynomials E*_{n,q}(t), and the
//! generalized polynomials E*_{n,χ,q}(t) attached to a Dirichlet character,
//! over two interchangeable backends: exact rationals and fixed-precision
//! p-adics.
//!
//! The numbers are defined through the recurrence obtained from their
//! generating function [2]_q / (q e^x + 1):
//!
//! ```text
//! E*_0 = 1,   q·Σ_{k=0}^{n} C(n,k) E*_k + E*_n = 0   (n ≥ 1)
//! ```
//!
//! The generalized polynomial attached to χ is evaluated through its
//! expression in terms of E*_{n,q^F} at any odd positive multiple F of the
//! conductor; the value does not depend on the choice of F (distribution
//! relation), which the test suite exercises.
//!
//! Summation convention: the character sum runs over a = 1..F. For the
//! trivial character this makes E*_{m,χ⁰,q}(t) = E*_{m,q}(t) - [2]_q t^m
//! rather than the plain polynomial; all identities here and in the
//! l-function layer use this convention consistently.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dirichlet::DirichletCharacter;
use crate::padic::{PadicContext, PadicNum};
use crate::{Error, Result};

/// A backend scalar: exact rational or fixed-precision p-adic. Values carry
/// their own context, so constructors are methods on an existing value.
pub trait Scalar: Clone + PartialEq + core::fmt::Debug {
    fn of_int(&self, n: i64) -> Self;
    fn of_bigint(&self, n: &BigInt) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn pow_u(&self, e: u64) -> Self;
    /// Exact zero (rational backend) or zero to the full claimed precision
    /// (p-adic backend).
    fn is_zero(&self) -> bool;
    /// χ(a) in this backend. The rational backend only supports characters
    /// whose values lie in {0, ±1}.
    fn character(&self, chi: &DirichletCharacter, a: i64) -> Result<Self>;
}

impl Scalar for BigRational {
    fn of_int(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn of_bigint(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn pow_u(&self, e: u64) -> Self {
        let mut acc = BigRational::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn character(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        match chi.eval_exact(a) {
            Some(v) => Ok(self.of_int(v as i64)),
            None => Err(Error::CharacterNotRational),
        }
    }
}

impl Scalar for PadicNum {
    fn of_int(&self, n: i64) -> Self {
        self.context().from_integer(n)
    }

    fn of_bigint(&self, n: &BigInt) -> Self {
        self.context().from_integer(n.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn pow_u(&self, e: u64) -> Self {
        self.pow_i(e as i64).expect("non-negative exponent")
    }

    fn is_zero(&self) -> bool {
        PadicNum::is_zero(self)
    }

    fn character(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        if chi.context() == self.context() {
            Ok(chi.eval(a))
        } else {
            Ok(chi.at_context(self.context())?.eval(a))
        }
    }
}

/// Sign selector for the q-bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketSign {
    /// [x]_q = 1 + q + … + q^(x-1)
    Plain,
    /// [x]_{-q} = 1 - q + q² - … ± q^(x-1)
    Minus,
}

/// The q-bracket [x]_q or its signed variant [x]_{-q}, as a polynomial in q
/// (so q = 1 is allowed).
pub fn bracket<S: Scalar>(x: u64, q: &S, sign: BracketSign) -> S {
    let mut acc = q.of_int(0);
    let mut qpow = q.of_int(1);
    for j in 0..x {
        match sign {
            BracketSign::Plain => acc = acc.add(&qpow),
            BracketSign::Minus => {
                if j % 2 == 0 {
                    acc = acc.add(&qpow);
                } else {
                    acc = acc.sub(&qpow);
                }
            }
        }
        if j + 1 < x {
            qpow = qpow.mul(q);
        }
    }
    acc
}

/// A q value with v_p(q-1) ≥ 1 (q = 1 allowed), bound to its prime p.
#[derive(Clone, Debug)]
pub struct QParam<S: Scalar> {
    q: S,
    p: u64,
}

fn vp_bigint(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None; // +∞
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut u = n.clone();
    loop {
        let (quot, rem) = u.div_rem(&p);
        if rem.is_zero() {
            v += 1;
            u = quot;
        } else {
            return Some(v);
        }
    }
}

/// v_p of an exact rational; `None` is +∞ (the zero rational).
pub fn vp_rational(r: &BigRational, p: u64) -> Option<i64> {
    let vn = vp_bigint(r.numer(), p)?;
    let vd = vp_bigint(r.denom(), p).expect("denominator is nonzero");
    Some(vn - vd)
}

impl QParam<BigRational> {
    /// Exact-rational q with v_p(q-1) ≥ 1 (q = 1 allowed). Also checks that
    /// 1+q is a p-unit.
    pub fn rational(q: BigRational, p: u64) -> Result<Self> {
        let _ = PadicContext::new(p, 1)?; // validates p
        let one = BigRational::one();
        if let Some(v) = vp_rational(&(&q - &one), p) {
            if v < 1 {
                return Err(Error::QNotNearOne);
            }
        }
        match vp_rational(&(&q + &one), p) {
            Some(0) => Ok(QParam { q, p }),
            _ => Err(Error::QNotNearOne),
        }
    }
}

impl QParam<PadicNum> {
    /// p-adic q with v_p(q-1) ≥ 1 (q = 1 allowed).
    pub fn padic(q: PadicNum) -> Result<Self> {
        let ctx = q.context();
        let one = ctx.one();
        let diff = &q - &one;
        if let Some(v) = diff.valuation_lower_bound() {
            if v < 1 {
                return Err(Error::QNotNearOne);
            }
        }
        Ok(QParam { q, p: ctx.p() })
    }
}

impl<S: Scalar> QParam<S> {
    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// q^e as a new parameter (v_p(q^e - 1) ≥ v_p(q - 1), so it stays valid).
    pub fn pow(&self, e: u64) -> Self {
        QParam {
            q: self.q.pow_u(e),
            p: self.p,
        }
    }

    /// [2]_q = 1 + q, a p-unit.
    pub fn bracket2(&self) -> S {
        self.q.of_int(1).add(&self.q)
    }
}

/// Memoized E*_{0..M,q} for a fixed q.
#[derive(Clone, Debug)]
pub struct QEulerCache<S: Scalar> {
    param: QParam<S>,
    values: Vec<S>,
}

impl<S: Scalar> QEulerCache<S> {
    /// Compute E*_0..E*_m from the recurrence
    /// E*_n = -q·Σ_{k<n} C(n,k) E*_k / (1+q).
    pub fn new(param: QParam<S>, m: usize) -> Result<Self> {
        let mut cache = QEulerCache {
            param,
            values: Vec::with_capacity(m + 1),
        };
        cache.ensure(m)?;
        Ok(cache)
    }

    pub fn param(&self) -> &QParam<S> {
        &self.param
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Extend the cache monotonically so E*_0..E*_m are present.
    pub fn ensure(&mut self, m: usize) -> Result<()> {
        let q = self.param.q().clone();
        if self.values.is_empty() {
            self.values.push(q.of_int(1));
        }
        let one_plus_q = self.param.bracket2();
        for n in self.values.len()..=m {
            let mut sum = q.of_int(0);
            for (k, e) in self.values.iter().enumerate() {
                let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
                sum = sum.add(&q.of_bigint(&c).mul(e));
            }
            let value = q.mul(&sum).neg().div(&one_plus_q)?;
            self.values.push(value);
        }
        Ok(())
    }

    /// E*_{n,q}; the cache must already hold index n.
    pub fn value(&self, n: usize) -> &S {
        &self.values[n]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Compute E*_0..E*_M for the given q.
pub fn q_euler_numbers<S: Scalar>(param: QParam<S>, m: usize) -> Result<QEulerCache<S>> {
    QEulerCache::new(param, m)
}

/// The q-Euler polynomial E*_{n,q}(t) = Σ_m C(n,m) t^(n-m) E*_{m,q},
/// evaluated by binomial expansion (t may have any valuation).
pub fn q_euler_poly<S: Scalar>(cache: &QEulerCache<S>, n: usize, t: &S) -> S {
    assert!(cache.len() > n, "cache too short for degree {n}");
    // t^(n-m) built incrementally from m = n down to 0
    let mut acc = cache.value(n).clone();
    let mut tpow = t.of_int(1);
    for m in (0..n).rev() {
        tpow = tpow.mul(t);
        let c = num_integer::binomial(BigInt::from(n), BigInt::from(m));
        acc = acc.add(&t.of_bigint(&c).mul(&tpow).mul(cache.value(m)));
    }
    acc
}

fn check_multiple(f: u64, conductor: u64) -> Result<()> {
    if f == 0 || f.is_multiple_of(2) || !f.is_multiple_of(conductor) {
        return Err(Error::BadMultiple { f, conductor });
    }
    Ok(())
}

/// The generalized q-Euler polynomial attached to χ, through its expression
/// in q^F-Euler polynomials at an odd positive multiple F of the conductor:
///
/// ```text
/// E*_{n,χ,q}(t) = F^n ([2]_q/[2]_{q^F}) Σ_{a=1}^{F} (-1)^a q^a χ(a) E*_{n,q^F}((a+t)/F)
/// ```
///
/// The result is independent of the admissible F.
pub fn gen_q_euler_poly<S: Scalar>(
    chi: &DirichletCharacter,
    q: &QParam<S>,
    n: usize,
    t: &S,
    f: u64,
) -> Result<S> {
    let cache_f = QEulerCache::new(q.pow(f), n)?;
    gen_q_euler_poly_with_cache(chi, q, &cache_f, n, t, f)
}

/// As [`gen_q_euler_poly`], reusing a precomputed cache of E*_{m,q^F}.
pub fn gen_q_euler_poly_with_cache<S: Scalar>(
    chi: &DirichletCharacter,
    q: &QParam<S>,
    cache_f: &QEulerCache<S>,
    n: usize,
    t: &S,
    f: u64,
) -> Result<S> {
    check_multiple(f, chi.conductor())?;
    debug_assert_eq!(cache_f.param().q(), &q.pow(f).q);
    let f_scalar = t.of_int(f as i64);
    let ratio = q.bracket2().div(&cache_f.param().bracket2())?;
    let mut sum = t.of_int(0);
    let mut q_pow = t.of_int(1);
    for a in 1..=f {
        q_pow = q_pow.mul(q.q());
        let chi_a = t.character(chi, a as i64)?;
        if Scalar::is_zero(&chi_a) {
            continue;
        }
        let arg = t.add(&t.of_int(a as i64)).div(&f_scalar)?;
        let mut term = chi_a.mul(&q_pow).mul(&q_euler_poly(cache_f, n, &arg));
        if a % 2 == 1 {
            term = term.neg();
        }
        sum = sum.add(&term);
    }
    Ok(f_scalar.pow_u(n as u64).mul(&ratio).mul(&sum))
}

/// Both sides of the alternating power-sum identity
///
/// ```text
/// Σ_{a=1}^{dn} (-1)^a q^a χ(a) (t+a)^m
///     = (E*_{m,χ,q}(t) + (-1)^{n+1} q^{dn} E*_{m,χ,q}(t+dn)) / [2]_q
/// ```
///
/// where d is the modulus of χ. Exact equality in the rational backend.
pub fn sum_identity_check<S: Scalar>(
    chi: &DirichletCharacter,
    q: &QParam<S>,
    m: usize,
    n: u64,
    t: &S,
) -> Result<(S, S)> {
    assert!(m >= 1 && n >= 1, "the identity is stated for m, n >= 1");
    let d = chi.modulus();
    let dn = d * n;
    let mut lhs = t.of_int(0);
    let mut q_pow = t.of_int(1);
    for a in 1..=dn {
        q_pow = q_pow.mul(q.q());
        let chi_a = t.character(chi, a as i64)?;
        if Scalar::is_zero(&chi_a) {
            continue;
        }
        let mut term = chi_a
            .mul(&q_pow)
            .mul(&t.add(&t.of_int(a as i64)).pow_u(m as u64));
        if a % 2 == 1 {
            term = term.neg();
        }
        lhs = lhs.add(&term);
    }

    let e_at_t = gen_q_euler_poly(chi, q, m, t, d)?;
    let e_shift = gen_q_euler_poly(chi, q, m, &t.add(&t.of_int(dn as i64)), d)?;
    let mut second = q.q().pow_u(dn).mul(&e_shift);
    if n.is_multiple_of(2) {
        second = second.neg();
    }
    let rhs = e_at_t.add(&second).div(&q.bracket2())?;
    Ok((lhs, rhs))
}

/// Ordinary Euler numbers E_n = 2^n E_n(1/2) from their own recurrence
/// (odd-index values vanish; Σ_{k even ≤ n} C(n,k) E_k = 0 for even n ≥ 2).
pub fn classical_euler_numbers(m: usize) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = Vec::with_capacity(m + 1);
    e.push(BigRational::one());
    for n in 1..=m {
        if n % 2 == 1 {
            e.push(BigRational::zero());
            continue;
        }
        let mut sum = BigRational::zero();
        for k in (0..n).step_by(2) {
            let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
            sum += BigRational::from_integer(c) * &e[k];
        }
        e.push(-sum);
    }
    e
}

/// Verify E_n = Σ_{m ≤ n} 2^m C(n,m) E*_m for all n ≤ M, where the E_n come
/// from the classical recurrence and the E*_m are the q = 1 values of the
/// q-Euler numbers.
pub fn classical_relation_check(m: usize) -> bool {
    let q1 = QParam::rational(BigRational::one(), 3).expect("q = 1 is valid for any p");
    let cache = QEulerCache::new(q1, m).expect("rational recurrence cannot fail");
    let classical = classical_euler_numbers(m);
    for (n, expected) in classical.iter().enumerate() {
        let mut sum = BigRational::zero();
        for (k, e_star) in cache.values()[..=n].iter().enumerate() {
            let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
            sum += BigRational::from_integer(c << k) * e_star;
        }
        if &sum != expected {
            return false;
        }
    }
    true
}

/// Reduce an exact rational u/v with gcd(v, p) = 1 modulo p^N via the modular
/// inverse of v. Rationals with p in the denominator are rejected.
pub fn reduce_rational(ctx: PadicContext, r: &BigRational) -> Result<PadicNum> {
    if vp_bigint(r.denom(), ctx.p()) != Some(0) {
        return Err(Error::PInDenominator);
    }
    ctx.from_ratio(r.numer(), r.denom())
}
