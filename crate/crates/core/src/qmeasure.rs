//! Finite-level approximations of the fermionic p-adic q-integral
//!
//! ```text
//! I_{-q}(f) = lim_{L→∞} (1/[dp^L]_{-q}) Σ_{a=0}^{dp^L - 1} f(a) (-q)^a
//! ```
//!
//! together with residual checks of its functional equations. The level-L
//! sum is exact in either backend; convergence is observed as valuation
//! growth of successive differences, not assumed.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::dirichlet::DirichletCharacter;
use crate::padic::PadicNum;
use crate::qeuler::{QParam, Scalar};
use crate::{Error, Result};

/// A polynomial integrand f(a) = Σ_j c_j (t+a)^j, optionally weighted by a
/// Dirichlet character χ(a). With χ present the summation domain is refined
/// to [0, d·p^L) for d the modulus of χ.
#[derive(Clone, Debug)]
pub struct IntegrandSpec<S: Scalar> {
    coeffs: Vec<S>,
    chi: Option<DirichletCharacter>,
    t: S,
}

impl<S: Scalar> IntegrandSpec<S> {
    pub fn new(coeffs: Vec<S>, chi: Option<DirichletCharacter>, t: S) -> Self {
        IntegrandSpec { coeffs, chi, t }
    }

    /// The constant integrand f = 1 (`one` supplies the backend context).
    pub fn constant(one: S) -> Self {
        IntegrandSpec {
            coeffs: alloc::vec![one.of_int(1)],
            chi: None,
            t: one.of_int(0),
        }
    }

    /// The monomial f(a) = (t+a)^degree.
    pub fn monomial(degree: usize, t: S) -> Self {
        let mut coeffs = alloc::vec![t.of_int(0); degree + 1];
        coeffs[degree] = t.of_int(1);
        IntegrandSpec {
            coeffs,
            chi: None,
            t,
        }
    }

    pub fn with_character(mut self, chi: DirichletCharacter) -> Self {
        self.chi = Some(chi);
        self
    }

    pub fn character(&self) -> Option<&DirichletCharacter> {
        self.chi.as_ref()
    }

    pub fn t(&self) -> &S {
        &self.t
    }

    /// Modulus of the character weight (1 when absent).
    pub fn domain_modulus(&self) -> u64 {
        self.chi.as_ref().map_or(1, |chi| chi.modulus())
    }

    /// The polynomial part Σ_j c_j (t+a)^j at integer a, without the χ weight.
    pub fn eval_poly(&self, a: i64) -> S {
        let x = self.t.add(&self.t.of_int(a));
        let mut acc = self.t.of_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// χ(a)·(polynomial part), the full integrand value.
    pub fn eval(&self, a: i64) -> Result<S> {
        let poly = self.eval_poly(a);
        match &self.chi {
            None => Ok(poly),
            Some(chi) => Ok(self.t.character(chi, a)?.mul(&poly)),
        }
    }

    /// The translated integrand f_k(a) = f(a+k): same coefficients and
    /// character, t shifted by k. Only valid with a character when k is a
    /// multiple of its modulus (so that χ(a+k) = χ(a)).
    fn shifted(&self, k: u64) -> Result<Self> {
        if let Some(chi) = &self.chi {
            if !k.is_multiple_of(chi.modulus()) {
                return Err(Error::Other(alloc::format!(
                    "shift {k} is not a multiple of the character modulus {}",
                    chi.modulus()
                )));
            }
        }
        Ok(IntegrandSpec {
            coeffs: self.coeffs.clone(),
            chi: self.chi.clone(),
            t: self.t.add(&self.t.of_int(k as i64)),
        })
    }
}

fn domain_size(d: u64, p: u64, level: u32) -> u64 {
    let mut size = d;
    for _ in 0..level {
        size = size.checked_mul(p).expect("level sum domain overflows u64");
    }
    size
}

/// [M]_{-q} = (1 + q^M)/(1 + q) for odd M, the (p-unit) normalizer of the
/// level sum.
fn minus_bracket<S: Scalar>(m: u64, q: &QParam<S>) -> Result<S> {
    debug_assert_eq!(m % 2, 1);
    let one = q.q().of_int(1);
    one.add(&q.q().pow_u(m)).div(&q.bracket2())
}

/// The level-L partial sum of the fermionic q-integral:
/// (1/[dp^L]_{-q}) Σ_{a=0}^{dp^L - 1} χ(a) f(a) (-q)^a.
pub fn fermionic_integral_approx<S: Scalar>(
    f: &IntegrandSpec<S>,
    q: &QParam<S>,
    level: u32,
) -> Result<S> {
    assert!(level >= 1, "level sums start at L = 1");
    let size = domain_size(f.domain_modulus(), q.p(), level);
    let mut sum = q.q().of_int(0);
    let mut q_pow = q.q().of_int(1);
    for a in 0..size {
        if a > 0 {
            q_pow = q_pow.mul(q.q());
        }
        let value = f.eval(a as i64)?;
        if !Scalar::is_zero(&value) {
            let term = value.mul(&q_pow);
            sum = if a % 2 == 0 {
                sum.add(&term)
            } else {
                sum.sub(&term)
            };
        }
    }
    sum.div(&minus_bracket(size, q)?)
}

/// Level-L residual of q·I_{-q}(f_1) + I_{-q}(f) - [2]_q f(0); its valuation
/// must grow without bound in L.
pub fn functional_eq_residual<S: Scalar>(
    f: &IntegrandSpec<S>,
    q: &QParam<S>,
    level: u32,
) -> Result<S> {
    shift_eq_residual(f, q, 1, level)
}

/// Level-L residual of the d-shifted identity for odd d:
/// q^d·I_{-q}(f_d) + I_{-q}(f) - [2]_q Σ_{a=0}^{d-1} (-1)^a q^a f(a).
pub fn shift_eq_residual<S: Scalar>(
    f: &IntegrandSpec<S>,
    q: &QParam<S>,
    dshift: u64,
    level: u32,
) -> Result<S> {
    if dshift.is_multiple_of(2) {
        return Err(Error::EvenShift(dshift));
    }
    let shifted = f.shifted(dshift)?;
    let lhs = q
        .q()
        .pow_u(dshift)
        .mul(&fermionic_integral_approx(&shifted, q, level)?)
        .add(&fermionic_integral_approx(f, q, level)?);
    let mut boundary = q.q().of_int(0);
    let mut q_pow = q.q().of_int(1);
    for a in 0..dshift {
        if a > 0 {
            q_pow = q_pow.mul(q.q());
        }
        let term = f.eval(a as i64)?.mul(&q_pow);
        boundary = if a % 2 == 0 {
            boundary.add(&term)
        } else {
            boundary.sub(&term)
        };
    }
    Ok(lhs.sub(&q.bracket2().mul(&boundary)))
}

/// Level-L unit-restricted sum for the l-function's integral representation:
///
/// ```text
/// (1/[dp^L]_{-q}) Σ_{0 ≤ a < dp^L, (a,p)=1} χ(a) ⟨a+pt⟩^{-s} (-q)^a
/// ```
///
/// which converges to the series value of l_{p,q}(s,t,χ) as L grows.
pub fn lq_via_integral(
    s: &PadicNum,
    t: &PadicNum,
    chi: &DirichletCharacter,
    q: &QParam<PadicNum>,
    level: u32,
) -> Result<PadicNum> {
    assert!(level >= 1, "level sums start at L = 1");
    let ctx = q.q().context();
    let chi = if chi.context() == ctx {
        chi.clone()
    } else {
        chi.at_context(ctx)?
    };
    let p = ctx.p();
    let size = domain_size(chi.modulus(), p, level);
    let minus_s = -s;
    let p_t = &ctx.from_integer(p as i64) * t;

    // ω(b)^{-1} per unit residue b mod p
    let mut inv_teich: Vec<Option<PadicNum>> = alloc::vec![None; p as usize];
    for (b, slot) in inv_teich.iter_mut().enumerate().take(p as usize).skip(1) {
        *slot = Some(ctx.teichmuller(&BigInt::from(b))?.inv()?);
    }

    let mut sum = ctx.zero();
    let mut q_pow = ctx.one();
    for a in 0..size {
        if a > 0 {
            q_pow = &q_pow * q.q();
        }
        if a % p == 0 {
            continue;
        }
        let chi_a = chi.eval(a as i64);
        if chi_a.is_exact_zero() {
            continue;
        }
        let apt = &ctx.from_integer(a as i64) + &p_t;
        let inv_w = inv_teich[(a % p) as usize]
            .as_ref()
            .expect("unit residue has a Teichmüller lift");
        let ang = &apt * inv_w;
        let powed = ang.pow_s(&minus_s)?;
        let term = &(&chi_a * &powed) * &q_pow;
        sum = if a % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    sum.checked_div(&minus_bracket(size, q)?)
}
