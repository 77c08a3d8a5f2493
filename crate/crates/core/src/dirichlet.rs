//! Dirichlet characters with odd squarefree modulus and values in Z_p.
//!
//! A character is a product of cyclic factors, one per odd prime ell dividing
//! the modulus. The factor at ell has order dividing m_max = gcd(ell-1, p-1),
//! so its values are (p-1)-th roots of unity and live in Z_p; they are
//! realized through a fixed primitive m_max-th root of unity
//! ω(r)^((p-1)/m_max), where r is the smallest primitive root mod p. The
//! factor at ell = p is exactly the Teichmüller character ω raised to the
//! factor exponent.
//!
//! Twisting by ω^{-n} and multiplying characters is exact exponent
//! bookkeeping; factors whose exponent becomes 0 are dropped, which keeps
//! results primitive.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::padic::{PadicContext, PadicNum};
use crate::{Error, Result};

fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root modulo an odd prime ell.
pub(crate) fn smallest_primitive_root(ell: u64) -> u64 {
    let order = ell - 1;
    let mut prime_divisors = Vec::new();
    let mut n = order;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            prime_divisors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        prime_divisors.push(n);
    }
    (2..ell)
        .find(|&g| prime_divisors.iter().all(|&q| pow_mod(g, order / q, ell) != 1))
        .expect("every odd prime has a primitive root")
}

/// One cyclic factor of a character: the local component at an odd prime ell.
#[derive(Clone, Debug)]
pub struct CharFactor {
    ell: u64,
    g: u64,
    k: u32,
    m_max: u32,
    /// root^0 .. root^(m_max-1) for the fixed primitive m_max-th root of
    /// unity root = ω(r)^((p-1)/m_max) in Z_p.
    root_powers: Vec<PadicNum>,
    /// dlog[a] = discrete log of a base g in (Z/ell)^×; dlog[0] is unused.
    dlog: Vec<u32>,
}

impl CharFactor {
    fn new(ctx: PadicContext, ell: u64, k: u32) -> Result<Self> {
        if !is_odd_prime(ell) {
            return Err(Error::InvalidFactorPrime(ell));
        }
        let p = ctx.p();
        let m_max = (ell - 1).gcd(&(p - 1)) as u32;
        let k = k % m_max;
        let g = smallest_primitive_root(ell);
        let mut dlog = alloc::vec![0u32; ell as usize];
        let mut x = 1u64;
        for i in 0..(ell - 1) as u32 {
            dlog[x as usize] = i;
            x = x * g % ell;
        }
        let r = smallest_primitive_root(p);
        let root = ctx
            .teichmuller(&BigInt::from(r))?
            .pow_i(((p - 1) / m_max as u64) as i64)?;
        let mut root_powers = Vec::with_capacity(m_max as usize);
        let mut acc = ctx.one();
        for _ in 0..m_max {
            root_powers.push(acc.clone());
            acc = &acc * &root;
        }
        debug_assert_eq!(acc, ctx.one(), "root has exact order dividing m_max");
        Ok(CharFactor {
            ell,
            g,
            k,
            m_max,
            root_powers,
            dlog,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Order of this factor: m_max / gcd(k, m_max).
    pub fn order(&self) -> u32 {
        if self.k == 0 {
            1
        } else {
            self.m_max / self.k.gcd(&self.m_max)
        }
    }

    fn value_exponent(&self, a: u64) -> u32 {
        let d = self.dlog[(a % self.ell) as usize];
        ((self.k as u64 * d as u64) % self.m_max as u64) as u32
    }
}

/// A Dirichlet character with odd squarefree modulus and values in Z_p.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    ctx: PadicContext,
    modulus: u64,
    conductor: u64,
    factors: Vec<CharFactor>,
}

impl DirichletCharacter {
    /// The trivial character of modulus 1 (empty factor product); its value
    /// is 1 everywhere, including at 0.
    pub fn trivial(ctx: PadicContext) -> Self {
        DirichletCharacter {
            ctx,
            modulus: 1,
            conductor: 1,
            factors: Vec::new(),
        }
    }

    /// Build a character from (ell, k) factor pairs. Each ell must be a
    /// distinct odd prime; k is reduced mod m_max = gcd(ell-1, p-1). A factor
    /// with k ≡ 0 stays in the modulus but not in the conductor.
    pub fn from_factors(ctx: PadicContext, factors: &[(u64, u32)]) -> Result<Self> {
        let mut built: Vec<CharFactor> = Vec::with_capacity(factors.len());
        for &(ell, k) in factors {
            if built.iter().any(|f| f.ell == ell) {
                return Err(Error::DuplicateFactorPrime(ell));
            }
            built.push(CharFactor::new(ctx, ell, k)?);
        }
        built.sort_by_key(|f| f.ell);
        Ok(Self::assemble(ctx, built))
    }

    fn assemble(ctx: PadicContext, factors: Vec<CharFactor>) -> Self {
        let modulus = factors.iter().map(|f| f.ell).product();
        let conductor = factors.iter().filter(|f| f.k != 0).map(|f| f.ell).product();
        DirichletCharacter {
            ctx,
            modulus,
            conductor,
            factors,
        }
    }

    /// The Teichmüller character ω: the factor (p, 1).
    pub fn teichmuller_char(ctx: PadicContext) -> Self {
        Self::from_factors(ctx, &[(ctx.p(), 1)]).expect("p is an odd prime")
    }

    /// The quadratic character mod ell (k = m_max/2; m_max is always even).
    pub fn quadratic(ctx: PadicContext, ell: u64) -> Result<Self> {
        if !is_odd_prime(ell) {
            return Err(Error::InvalidFactorPrime(ell));
        }
        let m_max = (ell - 1).gcd(&(ctx.p() - 1)) as u32;
        Self::from_factors(ctx, &[(ell, m_max / 2)])
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.k == 0)
    }

    pub fn factors(&self) -> &[CharFactor] {
        &self.factors
    }

    /// Factor data as (ell, k) pairs, suitable for rebuilding.
    pub fn factor_spec(&self) -> Vec<(u64, u32)> {
        self.factors.iter().map(|f| (f.ell, f.k)).collect()
    }

    /// Order of the character: lcm of the factor orders.
    pub fn order(&self) -> u32 {
        self.factors.iter().map(|f| f.order()).fold(1, |a, b| a.lcm(&b))
    }

    /// Rebuild the same character at another context (e.g. raised precision).
    pub fn at_context(&self, ctx: PadicContext) -> Result<Self> {
        assert_eq!(self.ctx.p(), ctx.p(), "characters are bound to one prime");
        Self::from_factors(ctx, &self.factor_spec())
    }

    /// χ(a): 0 when gcd(a, modulus) > 1, else the product of the factor
    /// values root^(k·dlog_g(a mod ell)).
    pub fn eval(&self, a: i64) -> PadicNum {
        let a = a.rem_euclid(self.modulus.max(1) as i64) as u64;
        let mut acc = self.ctx.one();
        for f in &self.factors {
            if a.is_multiple_of(f.ell) {
                return self.ctx.zero();
            }
            acc = &acc * &f.root_powers[f.value_exponent(a) as usize];
        }
        acc
    }

    /// χ(a) as an exact rational integer, when the character's values at `a`
    /// lie in {0, ±1} (always true for characters of order ≤ 2). `None` when
    /// the value is an honest non-rational root of unity.
    pub fn eval_exact(&self, a: i64) -> Option<i8> {
        let a = a.rem_euclid(self.modulus.max(1) as i64) as u64;
        let mut sign = 1i8;
        for f in &self.factors {
            if a.is_multiple_of(f.ell) {
                return Some(0);
            }
            let e = f.value_exponent(a);
            if e == 0 {
                continue;
            }
            if 2 * e == f.m_max {
                sign = -sign;
            } else {
                return None;
            }
        }
        Some(sign)
    }

    /// The primitive product character: factor exponents add mod each
    /// factor's m_max, and trivialized factors are dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.ctx, other.ctx, "characters must share a context");
        let mut spec: Vec<(u64, u32)> = Vec::new();
        for f in self.factors.iter().chain(other.factors.iter()) {
            match spec.iter_mut().find(|(ell, _)| *ell == f.ell) {
                Some((_, k)) => *k = (*k + f.k) % f.m_max,
                None => spec.push((f.ell, f.k)),
            }
        }
        spec.retain(|&(_, k)| k != 0);
        Self::from_factors(self.ctx, &spec)
    }

    /// The primitive character χ_n inducing χ·ω^{-n} mod lcm(d, p): the
    /// p-factor exponent shifts by -n mod (p-1); factors whose exponent
    /// becomes 0 are dropped and the conductor is recomputed.
    pub fn twist_teichmuller(&self, n: i64) -> Self {
        let p = self.ctx.p();
        let m_max_p = (p - 1) as u32;
        let k_p = self
            .factors
            .iter()
            .find(|f| f.ell == p)
            .map_or(0, |f| f.k);
        let k_new = ((k_p as i64 - n).rem_euclid(m_max_p as i64)) as u32;
        let mut spec: Vec<(u64, u32)> = self
            .factor_spec()
            .into_iter()
            .filter(|&(ell, k)| ell != p && k != 0)
            .collect();
        if k_new != 0 {
            spec.push((p, k_new));
        }
        Self::from_factors(self.ctx, &spec).expect("factors already validated")
    }
}
