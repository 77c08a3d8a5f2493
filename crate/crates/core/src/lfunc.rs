//! Series evaluation of the two-variable p-adic l_q-function
//!
//! ```text
//! l_{p,q}(s,t,χ) = Σ_{a=1, (a,p)=1}^{F} χ(a) h(s,t,a|F)
//!
//! h(s,t,a|F) = (-1)^a q^a ⟨a+pt⟩^{-s} ([2]_q/[2]_{q^F})
//!              Σ_{m≥0} binom(-s,m) (F/(a+pt))^m E*_{m,q^F}
//! ```
//!
//! for an odd positive multiple F of both p and the conductor of χ. The
//! inner power base is (a+pt), not ⟨a+pt⟩: only that form telescopes to
//! F^n E*_{n,q^F}((a+pt)/F) at s = -n and hence satisfies the interpolation
//! identity
//!
//! ```text
//! l_{p,q}(-n,t,χ) = E*_{n,χ_n,q}(pt) - p^n χ_n(p) ([2]_q/[2]_{q^p}) E*_{n,χ_n,q^p}(t)
//! ```
//!
//! with χ_n the primitive character inducing χ·ω^{-n}.
//!
//! Truncation: since a+pt is a unit and both the binomials and the E* are
//! p-integral, term m has valuation ≥ m·v_p(F), so M = ⌈prec/v_p(F)⌉ + 2
//! terms suffice. All series run at a raised working precision that
//! pre-budgets the v_p(M!) loss from the binomial recurrences; outputs are
//! truncated back to the requested precision and the achieved precision is
//! reported, never assumed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::dirichlet::DirichletCharacter;
use crate::padic::{vp_factorial, PadicContext, PadicNum};
use crate::qeuler::{gen_q_euler_poly, gen_q_euler_poly_with_cache, QEulerCache, QParam};
use crate::{Error, Result};

/// Tuning knobs for [`LqEvaluator`]; the defaults satisfy the truncation
/// budget, the overrides exist for soundness experiments.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Odd multiplier applied to the minimal F = lcm(p, conductor).
    pub f_multiplier: u64,
    /// Overrides the computed series truncation index.
    pub m_terms: Option<usize>,
    /// Extra guard digits on top of the computed working precision.
    pub extra_guard: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            f_multiplier: 1,
            m_terms: None,
            extra_guard: 0,
        }
    }
}

/// Outcome of one interpolation check: both sides and how far they agree.
#[derive(Clone, Debug)]
pub struct InterpolationReport {
    pub lhs: PadicNum,
    pub rhs: PadicNum,
    /// v_p(lhs - rhs), i.e. the number of absolute base-p digits on which
    /// the two sides agree (capped at the claimed precision).
    pub agreement_digits: i64,
    /// min claimed absolute precision of the two sides.
    pub claimed_abs: i64,
    /// target precision minus claimed precision: the cumulative reported loss.
    pub guard: i64,
}

/// Bound evaluation context for l_{p,q}(s,t,χ): character, q, the multiple
/// F, precomputed E*_{m,q^F}, and the truncation budget. Immutable after
/// construction.
#[derive(Clone, Debug)]
pub struct LqEvaluator {
    chi: DirichletCharacter,
    q: QParam<PadicNum>,
    target: PadicContext,
    work: PadicContext,
    f: u64,
    m_terms: usize,
    cache_f: QEulerCache<PadicNum>,
    /// [2]_q / [2]_{q^F} at working precision.
    ratio_f: PadicNum,
    /// ω(b)^{-1} per unit residue b mod p, at working precision.
    inv_teich: Vec<Option<PadicNum>>,
}

impl LqEvaluator {
    /// Evaluator with the default options: minimal F and the computed
    /// truncation budget.
    pub fn new(
        chi: &DirichletCharacter,
        q: &QParam<PadicNum>,
        target_prec: u32,
    ) -> Result<Self> {
        Self::with_options(chi, q, target_prec, EvalOptions::default())
    }

    pub fn with_options(
        chi: &DirichletCharacter,
        q: &QParam<PadicNum>,
        target_prec: u32,
        opts: EvalOptions,
    ) -> Result<Self> {
        if target_prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        if opts.f_multiplier == 0 || opts.f_multiplier.is_multiple_of(2) {
            return Err(Error::BadMultiple {
                f: opts.f_multiplier,
                conductor: chi.conductor(),
            });
        }
        let p = q.p();
        let f = p.lcm(&chi.conductor()) * opts.f_multiplier;
        debug_assert_eq!(f % 2, 1, "p and the conductor are odd");
        let vf = {
            let mut v = 0u32;
            let mut x = f;
            while x.is_multiple_of(p) {
                v += 1;
                x /= p;
            }
            v
        };
        debug_assert!(vf >= 1);
        let m_terms = opts
            .m_terms
            .unwrap_or_else(|| (target_prec as usize).div_ceil(vf as usize) + 2);
        let guard = vp_factorial(p, m_terms as u64) as u32 + 2 + opts.extra_guard;
        let target = q.q().context().with_precision(target_prec);
        let work = target.raised(guard);

        let q_work = QParam::padic(q.q().assume_exact_at(work))?;
        let chi_work = chi.at_context(work)?;
        let q_f = q_work.pow(f);
        let ratio_f = q_work.bracket2().checked_div(&q_f.bracket2())?;
        let cache_f = QEulerCache::new(q_f, m_terms)?;

        let mut inv_teich: Vec<Option<PadicNum>> = alloc::vec![None; p as usize];
        for (b, slot) in inv_teich.iter_mut().enumerate().take(p as usize).skip(1) {
            *slot = Some(work.teichmuller(&BigInt::from(b))?.inv()?);
        }

        Ok(LqEvaluator {
            chi: chi_work,
            q: q_work,
            target,
            work,
            f,
            m_terms,
            cache_f,
            ratio_f,
            inv_teich,
        })
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn m_terms(&self) -> usize {
        self.m_terms
    }

    pub fn target_precision(&self) -> u32 {
        self.target.precision()
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    fn check_st(&self, s: &PadicNum, t: &PadicNum) -> Result<()> {
        for x in [s, t] {
            if x.context().p() != self.target.p() {
                return Err(Error::ContextMismatch);
            }
            if let Some(v) = x.valuation_lower_bound() {
                if v < 0 {
                    return Err(Error::NotIntegral);
                }
            }
        }
        Ok(())
    }

    /// Final honest claim: the target precision capped by what the inputs
    /// support and by what the computation achieved.
    fn claim_for(&self, achieved: Option<i64>, s: &PadicNum, t: &PadicNum) -> i64 {
        let mut claim = self.target.precision() as i64;
        if let Some(a) = achieved {
            claim = claim.min(a);
        }
        if let Some(a) = s.abs_precision() {
            claim = claim.min(a);
        }
        if let Some(a) = t.abs_precision() {
            claim = claim.min(a + 1); // t only enters through p·t
        }
        claim
    }

    /// h(s,t,a|F) at full working precision.
    fn h_term_work(&self, s_w: &PadicNum, t_w: &PadicNum, a: u64) -> Result<PadicNum> {
        let p = self.work.p();
        if a.is_multiple_of(p) {
            return Err(Error::NotAUnit);
        }
        let apt = &self.work.from_integer(a as i64)
            + &(&self.work.from_integer(p as i64) * t_w);
        let inv_w = self.inv_teich[(a % p) as usize]
            .as_ref()
            .expect("unit residue");
        let ang = &apt * inv_w;
        let outer = ang.pow_s(&-s_w)?;

        // Σ_m binom(-s,m) (F/(a+pt))^m E*_{m,q^F}
        let x = self.work.from_integer(self.f as i64).checked_div(&apt)?;
        let minus_s = -s_w;
        let mut coef = self.work.one();
        let mut xpow = self.work.one();
        let mut sum = self.cache_f.value(0).clone(); // m = 0 term
        for m in 1..=self.m_terms {
            let factor = &minus_s - &self.work.from_integer(m as i64 - 1);
            coef = (&coef * &factor).checked_div(&self.work.from_integer(m as i64))?;
            xpow = &xpow * &x;
            sum = &sum + &(&(&coef * &xpow) * self.cache_f.value(m));
        }

        let q_a = self.q.q().pow_i(a as i64)?;
        let mut h = &(&(&q_a * &outer) * &self.ratio_f) * &sum;
        if a % 2 == 1 {
            h = -h;
        }
        Ok(h)
    }

    /// One term h(s,t,a|F) of the defining sum, at the target precision.
    pub fn h_term(&self, s: &PadicNum, t: &PadicNum, a: u64) -> Result<PadicNum> {
        self.check_st(s, t)?;
        let s_w = s.assume_exact_at(self.work);
        let t_w = t.assume_exact_at(self.work);
        let h = self.h_term_work(&s_w, &t_w, a)?;
        Ok(h.restrict_to(self.target, self.claim_for(h.abs_precision(), s, t)))
    }

    /// l_{p,q}(s,t,χ) = Σ_{a≤F, (a,p)=1} χ(a) h(s,t,a|F).
    pub fn lq_eval(&self, s: &PadicNum, t: &PadicNum) -> Result<PadicNum> {
        self.check_st(s, t)?;
        let s_w = s.assume_exact_at(self.work);
        let t_w = t.assume_exact_at(self.work);
        let p = self.work.p();
        let mut sum = self.work.zero();
        for a in 1..=self.f {
            if a % p == 0 {
                continue;
            }
            let chi_a = self.chi.eval(a as i64);
            if chi_a.is_exact_zero() {
                continue;
            }
            let h = self.h_term_work(&s_w, &t_w, a)?;
            sum = &sum + &(&chi_a * &h);
        }
        Ok(sum.restrict_to(self.target, self.claim_for(sum.abs_precision(), s, t)))
    }

    /// l_{p,q}(-n,t,χ) through the series.
    pub fn lq_at_negative_int(&self, n: u32, t: &PadicNum) -> Result<PadicNum> {
        self.lq_eval(&self.target.from_integer(-(n as i64)), t)
    }

    /// The interpolation value
    /// E*_{n,χ_n,q}(pt) - p^n χ_n(p) ([2]_q/[2]_{q^p}) E*_{n,χ_n,q^p}(t),
    /// computed entirely on the q-Euler polynomial side.
    pub fn interpolation_rhs(&self, n: u32, t: &PadicNum) -> Result<PadicNum> {
        self.check_st(&self.target.zero(), t)?;
        let t_w = t.assume_exact_at(self.work);
        let p = self.work.p();
        let chi_n = self.chi.twist_teichmuller(n as i64);

        let pt = &self.work.from_integer(p as i64) * &t_w;
        let first = if (n as usize) < self.cache_f.len() {
            gen_q_euler_poly_with_cache(&chi_n, &self.q, &self.cache_f, n as usize, &pt, self.f)?
        } else {
            gen_q_euler_poly(&chi_n, &self.q, n as usize, &pt, self.f)?
        };

        let chi_n_at_p = chi_n.eval(p as i64);
        let rhs = if chi_n_at_p.is_exact_zero() {
            first
        } else {
            // χ_n(p) ≠ 0 forces cond(χ_n) coprime to p, so cond(χ_n) | F/p
            debug_assert_eq!(
                (self.f / p) % chi_n.conductor(),
                0,
                "F/p must be admissible for the q^p side"
            );
            let q_p = self.q.pow(p);
            let ratio_p = self.q.bracket2().checked_div(&q_p.bracket2())?;
            let second = gen_q_euler_poly(&chi_n, &q_p, n as usize, &t_w, self.f / p)?;
            let p_pow = self.work.from_integer(p as i64).pow_i(n as i64)?;
            &first - &(&(&(&p_pow * &chi_n_at_p) * &ratio_p) * &second)
        };
        let claim = self.claim_for(rhs.abs_precision(), &self.target.zero(), t);
        Ok(rhs.restrict_to(self.target, claim))
    }

    /// The t = 0 interpolation value assembled with independently chosen
    /// multiples (fresh caches), for cross-checking the series at t = 0:
    /// E*_{n,χ_n,q} - [2]_q [2]_{q^p}^{-1} p^n χ_n(p) E*_{n,χ_n,q^p}.
    pub fn one_variable_rhs(&self, n: u32) -> Result<PadicNum> {
        let p = self.work.p();
        let chi_n = self.chi.twist_teichmuller(n as i64);
        let zero = self.work.zero();
        let f1 = p.lcm(&chi_n.conductor());
        let first = gen_q_euler_poly(&chi_n, &self.q, n as usize, &zero, f1)?;
        let chi_n_at_p = chi_n.eval(p as i64);
        let rhs = if chi_n_at_p.is_exact_zero() {
            first
        } else {
            let q_p = self.q.pow(p);
            let ratio_p = self.q.bracket2().checked_div(&q_p.bracket2())?;
            let second =
                gen_q_euler_poly(&chi_n, &q_p, n as usize, &zero, chi_n.conductor())?;
            let p_pow = self.work.from_integer(p as i64).pow_i(n as i64)?;
            &first - &(&(&(&p_pow * &chi_n_at_p) * &ratio_p) * &second)
        };
        let claim = self.claim_for(rhs.abs_precision(), &self.target.zero(), &self.target.zero());
        Ok(rhs.restrict_to(self.target, claim))
    }

    /// Evaluate both sides of the interpolation identity at s = -n and
    /// report how many digits agree.
    pub fn verify_interpolation(&self, n: u32, t: &PadicNum) -> Result<InterpolationReport> {
        let lhs = self.lq_at_negative_int(n, t)?;
        let rhs = self.interpolation_rhs(n, t)?;
        let claimed_abs = match (lhs.abs_precision(), rhs.abs_precision()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.target.precision() as i64,
        };
        let agreement_digits = lhs
            .agreement_digits(&rhs)
            .map_or(claimed_abs, |v| v.min(claimed_abs));
        Ok(InterpolationReport {
            lhs,
            rhs,
            agreement_digits,
            claimed_abs,
            guard: self.target.precision() as i64 - claimed_abs,
        })
    }

    /// Continuity witness: v_p(l(s1,t) - l(s2,t)); for s1 ≡ s2 mod p^k the
    /// result must be ≥ k - c for a small measured c.
    pub fn analyticity_probe(
        &self,
        s1: &PadicNum,
        s2: &PadicNum,
        t: &PadicNum,
    ) -> Result<i64> {
        let v1 = self.lq_eval(s1, t)?;
        let v2 = self.lq_eval(s2, t)?;
        let claimed = match (v1.abs_precision(), v2.abs_precision()) {
            (Some(a), Some(b)) => a.min(b),
            _ => self.target.precision() as i64,
        };
        Ok(v1.agreement_digits(&v2).map_or(claimed, |v| v.min(claimed)))
    }
}
