//! Parsers for the small spec languages used on the command line: values
//! like `1+p^2` or `-3` or `22/7`, character specs like `3:1,5:2`, level
//! ranges like `1..6`, and polynomial integrands like `(t+a)^3`.

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

use padic_lq::dirichlet::DirichletCharacter;
use padic_lq::padic::PadicContext;

/// Parse a value spec into an exact rational: an integer (`-3`), a fraction
/// (`22/7`), or a sum of `c`, `c*p`, `c*p^k` terms (`1+p`, `2+3p`, `1+p^2`).
/// The `*` is optional.
pub fn parse_value(input: &str, p: u64) -> Result<BigRational> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty value spec");
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .parse()
            .with_context(|| format!("bad numerator {num:?} in {input:?}"))?;
        let den: BigInt = den
            .parse()
            .with_context(|| format!("bad denominator {den:?} in {input:?}"))?;
        if den == BigInt::from(0) {
            bail!("zero denominator in {input:?}");
        }
        return Ok(BigRational::new(num, den));
    }

    let mut total = BigRational::from_integer(BigInt::from(0));
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '+' if i > 0 => {
                terms.push((negative, core::mem::take(&mut current)));
                negative = false;
            }
            '-' if i > 0 => {
                terms.push((negative, core::mem::take(&mut current)));
                negative = true;
            }
            '-' => negative = true,
            _ => current.push(ch),
        }
    }
    terms.push((negative, current));

    for (neg, term) in terms {
        if term.is_empty() {
            bail!("dangling sign in value spec {input:?}");
        }
        let (coeff, rest): (BigInt, &str) = match term.find(|c: char| !c.is_ascii_digit()) {
            None => (term.parse().unwrap(), ""),
            Some(0) => (BigInt::from(1), term.as_str()),
            Some(idx) => (term[..idx].parse().unwrap(), &term[idx..]),
        };
        let rest = rest.strip_prefix('*').unwrap_or(rest);
        let p_power: u32 = match rest {
            "" => 0,
            "p" => 1,
            _ => {
                let exp = rest
                    .strip_prefix("p^")
                    .ok_or_else(|| anyhow!("unrecognized term {term:?} in {input:?}"))?;
                exp.parse()
                    .with_context(|| format!("bad exponent in term {term:?}"))?
            }
        };
        let value = coeff * BigInt::from(p).pow(p_power);
        let value = BigRational::from_integer(value);
        total = if neg { total - value } else { total + value };
    }
    Ok(total)
}

/// Parse a character spec: `triv` for the trivial character, or
/// comma-separated `ell:k` factor pairs with `ell = p` meaning ω^k.
pub fn parse_character(input: &str, ctx: PadicContext) -> Result<DirichletCharacter> {
    if input == "triv" {
        return Ok(DirichletCharacter::trivial(ctx));
    }
    let mut factors = Vec::new();
    for pair in input.split(',') {
        let (ell, k) = pair
            .split_once(':')
            .ok_or_else(|| anyhow!("expected ell:k, got {pair:?} in {input:?}"))?;
        let ell: u64 = ell
            .parse()
            .with_context(|| format!("bad factor prime {ell:?} in {input:?}"))?;
        let k: u32 = k
            .parse()
            .with_context(|| format!("bad exponent {k:?} in {input:?}"))?;
        factors.push((ell, k));
    }
    DirichletCharacter::from_factors(ctx, &factors)
        .map_err(|e| anyhow!("invalid character {input:?}: {e}"))
}

/// Parse a level range: `1..6` (inclusive) or a single level `4`.
pub fn parse_levels(input: &str) -> Result<core::ops::RangeInclusive<u32>> {
    if let Some((lo, hi)) = input.split_once("..") {
        let lo: u32 = lo
            .parse()
            .with_context(|| format!("bad level {lo:?} in {input:?}"))?;
        let hi: u32 = hi
            .parse()
            .with_context(|| format!("bad level {hi:?} in {input:?}"))?;
        if lo == 0 || hi < lo {
            bail!("level range {input:?} must satisfy 1 <= lo <= hi");
        }
        Ok(lo..=hi)
    } else {
        let l: u32 = input
            .parse()
            .with_context(|| format!("bad level {input:?}"))?;
        if l == 0 {
            bail!("levels start at 1");
        }
        Ok(l..=l)
    }
}

/// Parse a polynomial integrand in the shifted variable: terms like
/// `(t+a)^3`, `a^2`, `a`, `5`, combined with `+`/`-`. Returns coefficients
/// by degree. `a` and `(t+a)` both denote the shifted variable; the shift `t`
/// itself comes from the `--t` flag.
pub fn parse_poly(input: &str) -> Result<Vec<i64>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty integrand spec");
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            '+' if depth == 0 && i > 0 && !current.is_empty() => {
                terms.push((negative, core::mem::take(&mut current)));
                negative = false;
            }
            '-' if depth == 0 && i > 0 && !current.is_empty() => {
                terms.push((negative, core::mem::take(&mut current)));
                negative = true;
            }
            '-' if depth == 0 && current.is_empty() => negative = true,
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        bail!("unbalanced parentheses in {input:?}");
    }
    terms.push((negative, current));

    let mut coeffs: Vec<i64> = Vec::new();
    for (neg, term) in terms {
        if term.is_empty() {
            bail!("dangling sign in integrand spec {input:?}");
        }
        let (coeff, rest) = match term.find(|c: char| !c.is_ascii_digit()) {
            None => (
                term.parse::<i64>()
                    .with_context(|| format!("bad coefficient in {term:?}"))?,
                String::new(),
            ),
            Some(0) => (1i64, term.clone()),
            Some(idx) => {
                let (digits, rest) = term.split_at(idx);
                (
                    digits
                        .parse::<i64>()
                        .with_context(|| format!("bad coefficient in {term:?}"))?,
                    rest.to_string(),
                )
            }
        };
        let rest = rest.strip_prefix('*').unwrap_or(&rest).to_string();
        let degree = if rest.is_empty() {
            0usize
        } else {
            let tail = if let Some(tail) = rest.strip_prefix("(t+a)") {
                tail
            } else if let Some(tail) = rest.strip_prefix('a') {
                tail
            } else {
                bail!("unrecognized term {term:?} in integrand {input:?}");
            };
            match tail {
                "" => 1,
                _ => tail
                    .strip_prefix('^')
                    .ok_or_else(|| anyhow!("unrecognized term {term:?} in {input:?}"))?
                    .parse()
                    .with_context(|| format!("bad exponent in {term:?}"))?,
            }
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += if neg { -coeff } else { coeff };
    }
    Ok(coeffs)
}
