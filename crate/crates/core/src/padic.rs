//! Fixed-precision arithmetic in Q_p with explicit precision propagation.
//!
//! A [`PadicNum`] stores a valuation, a unit mantissa, and the number of
//! base-p digits of the mantissa that are actually known. Every operation
//! propagates precision conservatively: absolute precisions are min'd on
//! addition (cancellation is detected by renormalizing the valuation) and
//! relative precisions are min'd on multiplication and division. Exact zero
//! is a distinct state (valuation +∞); a sum whose known digits all cancel
//! becomes "zero to precision A", which is reported distinctly.
//!
//! Series evaluations (`pow_s`, `binom_at`) run internally at a raised
//! working precision to absorb the divisions by m! and then truncate back,
//! so the precision they claim is honest.

use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;
use crate::Result;

/// An odd prime p together with a working precision of N base-p digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    prec: u32,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PadicContext {
    /// A context for the odd prime `p` with `prec` digits of working precision.
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(PadicContext { p, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same prime, `extra` additional guard digits.
    pub fn raised(&self, extra: u32) -> Self {
        PadicContext {
            p: self.p,
            prec: self.prec + extra,
        }
    }

    /// Same prime, precision exactly `prec`.
    pub fn with_precision(&self, prec: u32) -> Self {
        PadicContext { p: self.p, prec }
    }

    pub(crate) fn pow_p(&self, k: u32) -> BigUint {
        BigUint::from(self.p).pow(k)
    }

    /// The exact p-adic integer `n`, carried at full relative precision.
    pub fn from_integer<T: Into<BigInt>>(&self, n: T) -> PadicNum {
        let n: BigInt = n.into();
        if n.is_zero() {
            return self.zero();
        }
        let (val, unit) = split_valuation(&n, self.p);
        let mant = reduce_mod(&unit, &self.pow_p(self.prec));
        PadicNum {
            ctx: *self,
            repr: Repr::Unit {
                val,
                mant,
                prec: self.prec,
            },
        }
    }

    /// The exact rational `num/den` as an element of Q_p at full precision.
    /// `den` may contain powers of p (the valuation goes negative).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<PadicNum> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let (vn, un) = split_valuation(num, self.p);
        let (vd, ud) = split_valuation(den, self.p);
        let modulus = self.pow_p(self.prec);
        let inv = mod_inverse(&reduce_mod(&ud, &modulus), &modulus).ok_or(Error::NotAUnit)?;
        let mant = reduce_mod(&(un * BigInt::from(inv)), &modulus);
        Ok(PadicNum {
            ctx: *self,
            repr: Repr::Unit {
                val: vn - vd,
                mant,
                prec: self.prec,
            },
        })
    }

    /// Exact zero: the distinguished valuation-+∞ state.
    pub fn zero(&self) -> PadicNum {
        PadicNum {
            ctx: *self,
            repr: Repr::ExactZero,
        }
    }

    pub fn one(&self) -> PadicNum {
        self.from_integer(1)
    }

    /// The Teichmüller lift ω(a): the unique (p-1)-th root of unity in Z_p
    /// with ω(a) ≡ a (mod p), computed by iterating x ← x^p mod p^N to the
    /// fixed point.
    pub fn teichmuller(&self, a: &BigInt) -> Result<PadicNum> {
        let modulus = self.pow_p(self.prec);
        let mut x = reduce_mod(a, &modulus);
        if (&x % self.p).is_zero() {
            return Err(Error::NotAUnit);
        }
        let p_exp = BigUint::from(self.p);
        for _ in 0..=self.prec {
            let next = x.modpow(&p_exp, &modulus);
            if next == x {
                break;
            }
            x = next;
        }
        debug_assert_eq!(x.modpow(&p_exp, &modulus), x);
        Ok(PadicNum {
            ctx: *self,
            repr: Repr::Unit {
                val: 0,
                mant: x,
                prec: self.prec,
            },
        })
    }
}

/// v_p(m!) by Legendre's formula: (m - s_p(m)) / (p - 1).
pub(crate) fn vp_factorial(p: u64, m: u64) -> u64 {
    let mut digit_sum = 0u64;
    let mut k = m;
    while k > 0 {
        digit_sum += k % p;
        k /= p;
    }
    (m - digit_sum) / (p - 1)
}

fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut val = 0i64;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&p);
        if r.is_zero() {
            val += 1;
            u = q;
        } else {
            return (val, u);
        }
    }
}

fn reduce_mod(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let r = n.mod_floor(&m);
    r.to_biguint().expect("mod_floor is non-negative")
}

fn mod_inverse(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(reduce_mod(&ext.x, modulus))
}

#[derive(Clone, Debug)]
enum Repr {
    /// The exact zero of Q_p.
    ExactZero,
    /// All digits known to be zero: the value is ≡ 0 (mod p^abs) and
    /// nothing more is known. `abs` may be any integer.
    ZeroAt { abs: i64 },
    /// p^val · mant with mant a unit known to `prec` digits, i.e. the value
    /// is known modulo p^(val+prec). 1 ≤ prec ≤ N.
    Unit { val: i64, mant: BigUint, prec: u32 },
}

/// An element of Q_p at finite precision.
#[derive(Clone, Debug)]
pub struct PadicNum {
    ctx: PadicContext,
    repr: Repr,
}

/// Sign selector for [`binom_at`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomSign {
    Plus,
    Minus,
}

impl PadicNum {
    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    /// Exact valuation, if known: `Some(v)` for a nonzero-to-precision value,
    /// `None` for exact zero and for "zero to precision" (where only a lower
    /// bound is known; see [`PadicNum::valuation_lower_bound`]).
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// A proven lower bound on the valuation; `None` means +∞ (exact zero).
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ZeroAt { abs } => Some(*abs),
            Repr::Unit { val, .. } => Some(*val),
        }
    }

    /// Absolute precision: the value is known modulo p^(this). `None` for
    /// exact zero (known to infinite precision).
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ZeroAt { abs } => Some(*abs),
            Repr::Unit { val, prec, .. } => Some(val + *prec as i64),
        }
    }

    /// Relative precision in digits (0 for the two zero states).
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { prec, .. } => *prec,
            _ => 0,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// True if every known digit is zero (exact zero or zero-to-precision).
    pub fn is_zero(&self) -> bool {
        !matches!(self.repr, Repr::Unit { .. })
    }

    /// Base-p digits of the mantissa, least significant first, one per known
    /// digit of relative precision. Empty for the zero states.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Unit { mant, prec, .. } => {
                let mut out = Vec::with_capacity(*prec as usize);
                let p = BigUint::from(self.ctx.p);
                let mut m = mant.clone();
                for _ in 0..*prec {
                    let (q, r) = m.div_rem(&p);
                    out.push(r.to_u64().expect("digit < p"));
                    m = q;
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// The residue of the value modulo p^k, for integral values (valuation
    /// ≥ 0) with k not exceeding the absolute precision.
    pub fn residue(&self, k: u32) -> Result<BigUint> {
        match &self.repr {
            Repr::ExactZero => Ok(BigUint::zero()),
            Repr::ZeroAt { abs } => {
                if (k as i64) <= *abs {
                    Ok(BigUint::zero())
                } else {
                    Err(Error::Other(alloc::format!(
                        "residue mod p^{k} requested but value known only mod p^{abs}"
                    )))
                }
            }
            Repr::Unit { val, mant, prec } => {
                if *val < 0 {
                    return Err(Error::NotIntegral);
                }
                if (k as i64) > val + *prec as i64 {
                    return Err(Error::Other(alloc::format!(
                        "residue mod p^{k} requested but value known only mod p^{}",
                        val + *prec as i64
                    )));
                }
                let modulus = self.ctx.pow_p(k);
                Ok((mant * self.ctx.pow_p(*val as u32)) % modulus)
            }
        }
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "p-adic context mismatch: ({}, {}) vs ({}, {})",
            self.ctx.p,
            self.ctx.prec,
            other.ctx.p,
            other.ctx.prec
        );
    }

    /// Multiply by p^k (exact shift of the valuation).
    pub fn shift(&self, k: i64) -> Self {
        let repr = match &self.repr {
            Repr::ExactZero => Repr::ExactZero,
            Repr::ZeroAt { abs } => Repr::ZeroAt { abs: abs + k },
            Repr::Unit { val, mant, prec } => Repr::Unit {
                val: val + k,
                mant: mant.clone(),
                prec: *prec,
            },
        };
        PadicNum {
            ctx: self.ctx,
            repr,
        }
    }

    /// Normalize an integer representative known modulo p^abs (abs ≥ 1).
    fn from_int_at(ctx: PadicContext, x: &BigInt, abs: i64) -> Self {
        debug_assert!(abs >= 1);
        let modulus = ctx.pow_p(abs as u32);
        let r = reduce_mod(x, &modulus);
        if r.is_zero() {
            return PadicNum {
                ctx,
                repr: Repr::ZeroAt { abs },
            };
        }
        let (val, unit) = split_valuation(&BigInt::from(r), ctx.p);
        debug_assert!(val < abs);
        let prec = min((abs - val) as u32, ctx.prec);
        let mant = reduce_mod(&unit, &ctx.pow_p(prec));
        PadicNum {
            ctx,
            repr: Repr::Unit { val, mant, prec },
        }
    }

    /// Cap the absolute precision at `abs` (never raises it).
    pub fn cap_abs(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::ExactZero => PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt { abs },
            },
            Repr::ZeroAt { abs: a } => PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt { abs: min(*a, abs) },
            },
            Repr::Unit { val, mant, prec } => {
                if abs <= *val {
                    PadicNum {
                        ctx: self.ctx,
                        repr: Repr::ZeroAt { abs },
                    }
                } else {
                    let new_prec = min(*prec as i64, abs - val) as u32;
                    let mant = mant % self.ctx.pow_p(new_prec);
                    PadicNum {
                        ctx: self.ctx,
                        repr: Repr::Unit {
                            val: *val,
                            mant,
                            prec: new_prec,
                        },
                    }
                }
            }
        }
    }

    /// Reinterpret the known digits as exact in context `ctx2`. Used by
    /// series evaluators that compute at raised guard precision and truncate
    /// the claim back afterwards; the caller is responsible for capping the
    /// final claimed precision against the true input precision.
    pub(crate) fn assume_exact_at(&self, ctx2: PadicContext) -> Self {
        debug_assert_eq!(self.ctx.p, ctx2.p);
        let repr = match &self.repr {
            Repr::ExactZero => Repr::ExactZero,
            Repr::ZeroAt { .. } => Repr::ExactZero,
            Repr::Unit { val, mant, .. } => Repr::Unit {
                val: *val,
                mant: mant % ctx2.pow_p(ctx2.prec),
                prec: ctx2.prec,
            },
        };
        PadicNum { ctx: ctx2, repr }
    }

    /// Return the value in `ctx2`, claiming at most `abs_cap` absolute digits
    /// (and never more than is currently known).
    pub(crate) fn restrict_to(&self, ctx2: PadicContext, abs_cap: i64) -> Self {
        debug_assert_eq!(self.ctx.p, ctx2.p);
        let moved = PadicNum {
            ctx: ctx2,
            repr: self.repr.clone(),
        };
        let capped = moved.cap_abs(abs_cap);
        // re-cap relative precision to ctx2's working precision
        match capped.repr {
            Repr::Unit { val, mant, prec } => {
                let prec = min(prec, ctx2.prec);
                PadicNum {
                    ctx: ctx2,
                    repr: Repr::Unit {
                        val,
                        mant: mant % ctx2.pow_p(prec),
                        prec,
                    },
                }
            }
            repr => PadicNum { ctx: ctx2, repr },
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        self.check_ctx(other);
        match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) => other.clone(),
            (_, Repr::ExactZero) => self.clone(),
            (Repr::ZeroAt { abs }, _) => other.cap_abs(*abs),
            (_, Repr::ZeroAt { abs }) => self.cap_abs(*abs),
            (
                Repr::Unit {
                    val: vx,
                    mant: mx,
                    prec: px,
                },
                Repr::Unit {
                    val: vy,
                    mant: my,
                    prec: py,
                },
            ) => {
                let v0 = min(*vx, *vy);
                let abs = min(vx + *px as i64, vy + *py as i64);
                debug_assert!(abs - v0 >= 1);
                let sx = BigInt::from(mx.clone()) * BigInt::from(self.ctx.pow_p((vx - v0) as u32));
                let sy = BigInt::from(my.clone()) * BigInt::from(self.ctx.pow_p((vy - v0) as u32));
                Self::from_int_at(self.ctx, &(sx + sy), abs - v0).shift(v0)
            }
        }
    }

    fn neg_impl(&self) -> Self {
        match &self.repr {
            Repr::Unit { val, mant, prec } => {
                let modulus = self.ctx.pow_p(*prec);
                let mant = (&modulus - mant) % &modulus;
                debug_assert!(!mant.is_zero());
                PadicNum {
                    ctx: self.ctx,
                    repr: Repr::Unit {
                        val: *val,
                        mant,
                        prec: *prec,
                    },
                }
            }
            _ => self.clone(),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_ctx(other);
        match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => self.ctx.zero(),
            (Repr::ZeroAt { abs }, Repr::ZeroAt { abs: abs2 }) => PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt { abs: abs + abs2 },
            },
            (Repr::ZeroAt { abs }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::ZeroAt { abs }) => PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt { abs: abs + val },
            },
            (
                Repr::Unit {
                    val: vx,
                    mant: mx,
                    prec: px,
                },
                Repr::Unit {
                    val: vy,
                    mant: my,
                    prec: py,
                },
            ) => {
                let prec = min(*px, *py);
                let mant = (mx * my) % self.ctx.pow_p(prec);
                debug_assert!(!mant.is_zero());
                PadicNum {
                    ctx: self.ctx,
                    repr: Repr::Unit {
                        val: vx + vy,
                        mant,
                        prec,
                    },
                }
            }
        }
    }

    /// Multiplicative inverse. Errors on exact zero and on values that are
    /// zero to their full claimed precision (their valuation is unknown, so
    /// no digit of the inverse would be justified).
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::ExactZero | Repr::ZeroAt { .. } => Err(Error::DivisionByZero),
            Repr::Unit { val, mant, prec } => {
                let modulus = self.ctx.pow_p(*prec);
                let mant = mod_inverse(mant, &modulus).expect("mantissa is a unit");
                Ok(PadicNum {
                    ctx: self.ctx,
                    repr: Repr::Unit {
                        val: -val,
                        mant,
                        prec: *prec,
                    },
                })
            }
        }
    }

    /// Division with the conservative minimum precision rule; valuations
    /// subtract, so dividing by a non-unit shifts the valuation without
    /// losing digits. Errors when `other` is (possibly) zero.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other);
        match (&self.repr, &other.repr) {
            (_, Repr::ExactZero) | (_, Repr::ZeroAt { .. }) => Err(Error::DivisionByZero),
            (Repr::ExactZero, _) => Ok(self.ctx.zero()),
            (Repr::ZeroAt { abs }, Repr::Unit { val, .. }) => Ok(PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt { abs: abs - val },
            }),
            _ => Ok(self.mul_impl(&other.inv()?)),
        }
    }

    /// Integer power, square-and-multiply. Negative exponents invert first.
    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow_i(-e);
        }
        let e = e as u64;
        if e == 0 {
            return Ok(self.ctx.one());
        }
        match &self.repr {
            Repr::ExactZero => Ok(self.ctx.zero()),
            Repr::ZeroAt { abs } => Ok(PadicNum {
                ctx: self.ctx,
                repr: Repr::ZeroAt {
                    abs: abs * e as i64,
                },
            }),
            Repr::Unit { val, mant, prec } => {
                // modpow on the mantissa keeps this O(log e) even for the
                // p^L-sized exponents used by the level sums
                let modulus = self.ctx.pow_p(*prec);
                let mant = mant.modpow(&BigUint::from(e), &modulus);
                let val = val
                    .checked_mul(e as i64)
                    .expect("valuation overflow in pow");
                Ok(PadicNum {
                    ctx: self.ctx,
                    repr: Repr::Unit {
                        val,
                        mant,
                        prec: *prec,
                    },
                })
            }
        }
    }

    /// The principal-unit power x^s = Σ_m binom(s,m)(x-1)^m for x ≡ 1 mod p
    /// and integral s. Truncated so the tail valuation exceeds the context
    /// precision; internal guard digits absorb the binomial divisions and the
    /// claim is capped by the precision of both inputs.
    pub fn pow_s(&self, s: &Self) -> Result<Self> {
        let ctx = self.ctx;
        if s.ctx.p != ctx.p {
            return Err(Error::ContextMismatch);
        }
        match &self.repr {
            Repr::Unit { val: 0, mant, .. } => {
                if (mant % ctx.p) != BigUint::one() {
                    return Err(Error::BaseNotOneModP);
                }
            }
            _ => return Err(Error::BaseNotOneModP),
        }
        if let Some(v) = s.valuation_lower_bound() {
            if v < 0 {
                return Err(Error::NotIntegral);
            }
        }
        if s.is_exact_zero() {
            return Ok(ctx.one());
        }

        let target = ctx.prec as i64;
        let one = ctx.one();
        let y0 = self - &one;
        let v1 = match y0.valuation_lower_bound() {
            None => return Ok(ctx.one()), // x is exactly 1
            Some(v) => v,
        };
        debug_assert!(v1 >= 1);

        // smallest M with m*v1 - v_p(m!) >= target for all m >= M, using
        // v_p(m!) <= (m-1)/(p-1)
        let p = ctx.p as i64;
        let denom = v1 * (p - 1) - 1;
        let m_terms = ((target * (p - 1) - 1 + denom - 1) / denom + 1).max(1) as u64;

        let guard = vp_factorial(ctx.p, m_terms) as u32 + 2;
        let work = ctx.raised(guard);
        let xw = self.assume_exact_at(work);
        let sw = s.assume_exact_at(work);
        let y = &xw - &work.one();

        let mut acc = work.one();
        let mut coef = work.one();
        let mut ypow = work.one();
        for m in 1..=m_terms {
            let factor = &sw - &work.from_integer(m as i64 - 1);
            coef = coef
                .mul_impl(&factor)
                .checked_div(&work.from_integer(m as i64))?;
            ypow = ypow.mul_impl(&y);
            acc = acc.add_impl(&coef.mul_impl(&ypow));
        }

        // honest claim: the result depends on x to its own absolute precision
        // and on s through s_abs + v_p(x-1)
        let mut claim = target;
        if let Some(ax) = self.abs_precision() {
            claim = min(claim, ax);
        }
        if let Some(asx) = s.abs_precision() {
            claim = min(claim, asx + v1);
        }
        Ok(acc.restrict_to(ctx, claim))
    }

    /// binom(±s, m) = (±s)(±s-1)…(±s-m+1)/m!, evaluated at the context
    /// precision. The loss from dividing by m! is bounded by v_p(m!) and is
    /// reflected in the precision of the result.
    pub fn binom_at(s: &Self, m: u64, sign: BinomSign) -> Result<Self> {
        let ctx = s.ctx;
        if m == 0 {
            return Ok(ctx.one());
        }
        let guard = vp_factorial(ctx.p, m) as u32 + 2;
        let work = ctx.raised(guard);
        let sw = match sign {
            BinomSign::Plus => s.assume_exact_at(work),
            BinomSign::Minus => s.assume_exact_at(work).neg_impl(),
        };
        let mut coef = work.one();
        for j in 0..m {
            let factor = &sw - &work.from_integer(j as i64);
            coef = coef
                .mul_impl(&factor)
                .checked_div(&work.from_integer(j as i64 + 1))?;
        }
        let mut claim = ctx.prec as i64;
        if let Some(abs) = s.abs_precision() {
            claim = min(claim, abs - vp_factorial(ctx.p, m) as i64);
        }
        Ok(coef.restrict_to(ctx, claim))
    }

    /// v_p(self - other): the number of absolute digits on which the two
    /// values agree. `None` means no disagreement is detectable at the
    /// claimed precision of an exact-zero difference.
    pub fn agreement_digits(&self, other: &Self) -> Option<i64> {
        let diff = self - other;
        match diff.repr {
            Repr::ExactZero => None,
            Repr::ZeroAt { abs } => Some(abs),
            Repr::Unit { val, .. } => Some(val),
        }
    }

    /// True when the two values agree modulo p^k.
    pub fn eq_mod(&self, other: &Self, k: i64) -> bool {
        match self.agreement_digits(other) {
            None => true,
            Some(v) => v >= k,
        }
    }
}

/// ⟨a+pt⟩ = ω(a)^{-1} (a + pt) for a coprime to p and integral t; the result
/// is ≡ 1 (mod p).
pub fn angle(a: &BigInt, t: &PadicNum) -> Result<PadicNum> {
    let ctx = t.context();
    if let Some(v) = t.valuation_lower_bound() {
        if v < 0 {
            return Err(Error::NotIntegral);
        }
    }
    let w = ctx.teichmuller(a)?;
    let apt = &ctx.from_integer(a.clone()) + &(&ctx.from_integer(ctx.p() as i64) * t);
    apt.checked_div(&w)
}

impl PartialEq for PadicNum {
    /// Equality at the minimum of the two claimed precisions.
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && (self - other).is_zero()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl core::ops::$trait<&PadicNum> for &PadicNum {
            type Output = PadicNum;
            fn $method(self, rhs: &PadicNum) -> PadicNum {
                self.$impl(rhs)
            }
        }
        impl core::ops::$trait for PadicNum {
            type Output = PadicNum;
            fn $method(self, rhs: PadicNum) -> PadicNum {
                self.$impl(&rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Mul, mul, mul_impl);

impl core::ops::Sub<&PadicNum> for &PadicNum {
    type Output = PadicNum;
    fn sub(self, rhs: &PadicNum) -> PadicNum {
        self.add_impl(&rhs.neg_impl())
    }
}

impl core::ops::Sub for PadicNum {
    type Output = PadicNum;
    fn sub(self, rhs: PadicNum) -> PadicNum {
        self.add_impl(&rhs.neg_impl())
    }
}

impl core::ops::Neg for &PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        self.neg_impl()
    }
}

impl core::ops::Neg for PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        self.neg_impl()
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.p;
        match &self.repr {
            Repr::ExactZero => write!(f, "0"),
            Repr::ZeroAt { abs } => write!(f, "O({p}^{abs})"),
            Repr::Unit { val, prec, .. } => {
                let digits = self.digits();
                let mut first = true;
                for (i, d) in digits.iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    let e = val + i as i64;
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match (*d, e) {
                        (d, 0) => write!(f, "{d}")?,
                        (1, 1) => write!(f, "{p}")?,
                        (d, 1) => write!(f, "{d}*{p}")?,
                        (1, e) => write!(f, "{p}^{e}")?,
                        (d, e) => write!(f, "{d}*{p}^{e}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                write!(f, " + O({p}^{})", val + *prec as i64)
            }
        }
    }
}
