//! Command-line front end: q-Euler numbers, generalized polynomials,
//! finite-level fermionic q-integrals, l_{p,q}(s,t,χ) evaluation, and the
//! interpolation-theorem verifier. All output is deterministic; every
//! printed p-adic value carries its achieved precision.

mod output;
mod spec;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use padic_lq::lfunc::LqEvaluator;
use padic_lq::padic::{PadicContext, PadicNum};
use padic_lq::qeuler::{gen_q_euler_poly, q_euler_numbers, reduce_rational, QParam};
use padic_lq::qmeasure::{fermionic_integral_approx, IntegrandSpec};

use output::{padic_to_csv, padic_to_json, rational_to_string};

const PREC_ENV: &str = "PADIC_LQ_PREC_DEFAULT";

#[derive(Parser)]
#[command(
    name = "padic-lq",
    about = "q-Euler numbers and the two-variable p-adic l_q-function",
    version
)]
struct Cli {
    /// Output format for rows and values.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Padic,
}

#[derive(Args)]
struct BaseArgs {
    /// Odd prime p.
    #[arg(long)]
    p: u64,
    /// q spec: "1", "1+p", "1+p^2", an integer, or "u/v".
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Working precision in p-adic digits (default: $PADIC_LQ_PREC_DEFAULT or 20).
    #[arg(long)]
    prec: Option<u32>,
}

impl BaseArgs {
    fn precision(&self) -> Result<u32> {
        if let Some(p) = self.prec {
            return Ok(p);
        }
        match std::env::var(PREC_ENV) {
            Ok(v) => v
                .parse()
                .with_context(|| format!("bad {PREC_ENV} value {v:?}")),
            Err(_) => Ok(20),
        }
    }

    fn context(&self) -> Result<PadicContext> {
        Ok(PadicContext::new(self.p, self.precision()?)?)
    }

    fn q_rational(&self) -> Result<BigRational> {
        spec::parse_value(&self.q, self.p)
    }

    fn q_padic(&self, ctx: PadicContext) -> Result<QParam<PadicNum>> {
        let q = reduce_rational(ctx, &self.q_rational()?)
            .map_err(|e| anyhow!("q spec {:?}: {e}", self.q))?;
        Ok(QParam::padic(q)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// q-Euler numbers E*_0..E*_M; emits one row {n, value} per index.
    EulerQ {
        #[command(flatten)]
        base: BaseArgs,
        /// Largest index M.
        #[arg(long = "M", value_name = "M")]
        m: usize,
        #[arg(long, value_enum, default_value_t = Backend::Padic)]
        backend: Backend,
    },
    /// Generalized q-Euler polynomial E*_{n,χ,q}(t) at an odd multiple F of
    /// the conductor.
    GenEuler {
        #[command(flatten)]
        base: BaseArgs,
        /// Character spec: "triv" or "ell:k[,ell:k…]" (ell = p means ω^k).
        #[arg(long = "char", value_name = "CHAR")]
        character: String,
        #[arg(long)]
        n: usize,
        /// t spec (same grammar as q).
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t: String,
        /// Odd positive multiple of the conductor (default: the conductor).
        #[arg(long = "F", value_name = "F")]
        multiple: Option<u64>,
        #[arg(long, value_enum, default_value_t = Backend::Padic)]
        backend: Backend,
    },
    /// Finite-level fermionic q-integral of a polynomial integrand; emits
    /// one row per level with the difference valuation to the previous one.
    Integral {
        #[command(flatten)]
        base: BaseArgs,
        /// Integrand spec, e.g. "(t+a)^3", "a^2-a", "1".
        #[arg(long)]
        f: String,
        /// Shift t used by the integrand (same grammar as q).
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t: String,
        /// Level range, e.g. "1..6" or "4".
        #[arg(long)]
        levels: String,
        /// Optional character weight.
        #[arg(long = "char", value_name = "CHAR")]
        character: Option<String>,
    },
    /// Evaluate the two-variable p-adic l_q-function l_{p,q}(s,t,χ).
    Lq {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long = "char", value_name = "CHAR", default_value = "triv")]
        character: String,
        /// s spec with |s|_p ≤ 1 (same grammar as q).
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t: String,
    },
    /// Identity verification; nonzero exit code on any failure.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Check l_{p,q}(-n,t,χ) against the q-Euler polynomial combination,
    /// either on a named grid or at a single point.
    Theorem {
        /// Named grid: "default" (full acceptance grid) or "quick".
        #[arg(long, conflicts_with_all = ["p", "q", "n"])]
        grid: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long = "char", value_name = "CHAR", default_value = "triv")]
        character: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t: String,
        #[arg(long)]
        prec: Option<u32>,
        /// Required agreement in digits (default 15).
        #[arg(long, default_value_t = 15)]
        min_agreement: i64,
    },
}

fn emit_padic(format: Format, x: &PadicNum) -> String {
    match format {
        Format::Json => padic_to_json(x).to_string(),
        Format::Csv => padic_to_csv(x),
    }
}

fn parse_integral_value(spec_str: &str, ctx: PadicContext, what: &str) -> Result<PadicNum> {
    let r = spec::parse_value(spec_str, ctx.p())?;
    let v = reduce_rational(ctx, &r).map_err(|e| anyhow!("{what} spec {spec_str:?}: {e}"))?;
    if v.valuation_lower_bound().is_some_and(|v| v < 0) {
        bail!("{what} spec {spec_str:?} must have |value|_p <= 1");
    }
    Ok(v)
}

fn run_euler_q(format: Format, base: BaseArgs, m: usize, backend: Backend) -> Result<()> {
    match backend {
        Backend::Exact => {
            let q = QParam::rational(base.q_rational()?, base.p)?;
            let cache = q_euler_numbers(q, m)?;
            if format == Format::Csv {
                println!("n,value");
            }
            for (n, value) in cache.values().iter().enumerate() {
                match format {
                    Format::Json => {
                        println!("{}", json!({"n": n, "value": rational_to_string(value)}))
                    }
                    Format::Csv => println!("{n},{}", rational_to_string(value)),
                }
            }
        }
        Backend::Padic => {
            let ctx = base.context()?;
            let cache = q_euler_numbers(base.q_padic(ctx)?, m)?;
            if format == Format::Csv {
                println!("n,valuation,digits,prec");
            }
            for (n, value) in cache.values().iter().enumerate() {
                match format {
                    Format::Json => {
                        println!("{}", json!({"n": n, "value": padic_to_json(value)}))
                    }
                    Format::Csv => println!("{n},{}", padic_to_csv(value)),
                }
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_gen_euler(
    format: Format,
    base: BaseArgs,
    character: String,
    n: usize,
    t: String,
    multiple: Option<u64>,
    backend: Backend,
) -> Result<()> {
    let ctx = base.context()?;
    let chi = spec::parse_character(&character, ctx)?;
    let f = multiple.unwrap_or_else(|| chi.conductor());
    match backend {
        Backend::Exact => {
            let q = QParam::rational(base.q_rational()?, base.p)?;
            let t = spec::parse_value(&t, base.p)?;
            let value = gen_q_euler_poly(&chi, &q, n, &t, f)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "char": character, "n": n, "F": f,
                        "value": rational_to_string(&value),
                    })
                ),
                Format::Csv => println!("{}", rational_to_string(&value)),
            }
        }
        Backend::Padic => {
            let q = base.q_padic(ctx)?;
            let t = reduce_rational(ctx, &spec::parse_value(&t, base.p)?)
                .map_err(|e| anyhow!("t spec: {e}"))?;
            let value = gen_q_euler_poly(&chi, &q, n, &t, f)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "char": character, "n": n, "F": f,
                        "value": padic_to_json(&value),
                    })
                ),
                Format::Csv => println!("{}", emit_padic(format, &value)),
            }
        }
    }
    Ok(())
}

fn run_integral(
    format: Format,
    base: BaseArgs,
    f: String,
    t: String,
    levels: String,
    character: Option<String>,
) -> Result<()> {
    let ctx = base.context()?;
    let q = base.q_padic(ctx)?;
    let t = parse_integral_value(&t, ctx, "t")?;
    let coeffs = spec::parse_poly(&f)?;
    let coeffs: Vec<PadicNum> = coeffs.iter().map(|&c| ctx.from_integer(c)).collect();
    let chi = character
        .map(|s| spec::parse_character(&s, ctx))
        .transpose()?;
    let integrand = IntegrandSpec::new(coeffs, chi, t);
    if format == Format::Csv {
        println!("level,valuation,digits,prec,diff_valuation");
    }
    let mut previous: Option<PadicNum> = None;
    for level in spec::parse_levels(&levels)? {
        let value = fermionic_integral_approx(&integrand, &q, level)?;
        let diff = previous
            .replace(value.clone())
            .map(|prev| prev.agreement_digits(&value));
        let diff_str = match diff {
            None => "null".to_string(),
            Some(None) => "inf".to_string(),
            Some(Some(v)) => v.to_string(),
        };
        match format {
            Format::Json => {
                let diff_json = match diff {
                    None => serde_json::Value::Null,
                    Some(None) => json!("inf"),
                    Some(Some(v)) => json!(v),
                };
                println!(
                    "{}",
                    json!({
                        "level": level,
                        "value": padic_to_json(&value),
                        "diff_valuation": diff_json,
                    })
                );
            }
            Format::Csv => println!("{level},{},{diff_str}", padic_to_csv(&value)),
        }
    }
    Ok(())
}

fn run_lq(format: Format, base: BaseArgs, character: String, s: String, t: String) -> Result<()> {
    let ctx = base.context()?;
    let chi = spec::parse_character(&character, ctx)?;
    let q = base.q_padic(ctx)?;
    let s = parse_integral_value(&s, ctx, "s")?;
    let t = parse_integral_value(&t, ctx, "t")?;
    let ev = LqEvaluator::new(&chi, &q, ctx.precision())?;
    let value = ev.lq_eval(&s, &t)?;
    let achieved = value.abs_precision().unwrap_or(ctx.precision() as i64);
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "value": padic_to_json(&value),
                "achieved_prec": achieved,
                "F": ev.f(),
                "M_terms": ev.m_terms(),
            })
        ),
        Format::Csv => println!(
            "{},{achieved},{},{}",
            padic_to_csv(&value),
            ev.f(),
            ev.m_terms()
        ),
    }
    Ok(())
}

struct TheoremRow {
    p: u64,
    q: String,
    character: String,
    n: u32,
    t: String,
    agreement: i64,
    claimed: i64,
    guard: i64,
    pass: bool,
}

fn theorem_point(
    p: u64,
    q_spec: &str,
    char_spec: &str,
    n: u32,
    t_spec: &str,
    prec: u32,
    min_agreement: i64,
) -> Result<TheoremRow> {
    let ctx = PadicContext::new(p, prec)?;
    let chi = spec::parse_character(char_spec, ctx)?;
    let q = reduce_rational(ctx, &spec::parse_value(q_spec, p)?)
        .map_err(|e| anyhow!("q spec {q_spec:?}: {e}"))?;
    let q = QParam::padic(q)?;
    let t = parse_integral_value(t_spec, ctx, "t")?;
    let ev = LqEvaluator::new(&chi, &q, prec)?;
    let report = ev.verify_interpolation(n, &t)?;
    Ok(TheoremRow {
        p,
        q: q_spec.to_string(),
        character: char_spec.to_string(),
        n,
        t: t_spec.to_string(),
        agreement: report.agreement_digits,
        claimed: report.claimed_abs,
        guard: report.guard,
        pass: report.agreement_digits >= min_agreement && report.guard <= 5,
    })
}

fn theorem_grid_rows(grid: &str, prec: u32, min_agreement: i64) -> Result<Vec<TheoremRow>> {
    let (primes, q_specs, chars, n_max, t_specs): (
        Vec<u64>,
        Vec<&str>,
        Vec<&str>,
        u32,
        Vec<&str>,
    ) = match grid {
        "default" => (
            vec![5, 7],
            vec!["1", "1+p", "1+p^2"],
            vec!["triv", "3:1", "omega"],
            6,
            vec!["0", "1", "2+3p"],
        ),
        "quick" => (
            vec![5],
            vec!["1+p"],
            vec!["triv", "3:1"],
            2,
            vec!["0", "1"],
        ),
        other => bail!("unknown grid {other:?}; use \"default\" or \"quick\""),
    };
    let mut rows = Vec::new();
    for &p in &primes {
        for q_spec in &q_specs {
            for char_spec in &chars {
                let resolved_char = if *char_spec == "omega" {
                    format!("{p}:1")
                } else {
                    (*char_spec).to_string()
                };
                for n in 0..=n_max {
                    for t_spec in &t_specs {
                        rows.push(theorem_point(
                            p,
                            q_spec,
                            &resolved_char,
                            n,
                            t_spec,
                            prec,
                            min_agreement,
                        )?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn run_verify_theorem(
    format: Format,
    grid: Option<String>,
    p: Option<u64>,
    q: Option<String>,
    character: String,
    n: Option<u32>,
    t: String,
    prec: Option<u32>,
    min_agreement: i64,
) -> Result<ExitCode> {
    let prec = prec.unwrap_or(20);
    let rows = match grid {
        Some(grid) => theorem_grid_rows(&grid, prec, min_agreement)?,
        None => {
            let p = p.ok_or_else(|| anyhow!("--p is required without --grid"))?;
            let q = q.ok_or_else(|| anyhow!("--q is required without --grid"))?;
            let n = n.ok_or_else(|| anyhow!("--n is required without --grid"))?;
            vec![theorem_point(p, &q, &character, n, &t, prec, min_agreement)?]
        }
    };
    if format == Format::Csv {
        println!("p,q,char,n,t,agreement_digits,claimed_abs,guard,pass");
    }
    let mut failed = 0usize;
    for row in &rows {
        if !row.pass {
            failed += 1;
        }
        match format {
            Format::Json => println!(
                "{}",
                json!({
                    "p": row.p, "q": row.q, "char": row.character,
                    "n": row.n, "t": row.t,
                    "agreement_digits": row.agreement,
                    "claimed_abs": row.claimed,
                    "guard": row.guard,
                    "pass": row.pass,
                })
            ),
            Format::Csv => println!(
                "{},{},{},{},{},{},{},{},{}",
                row.p,
                row.q,
                row.character,
                row.n,
                row.t,
                row.agreement,
                row.claimed,
                row.guard,
                row.pass
            ),
        }
    }
    eprintln!(
        "verified {} point(s): {} passed, {} failed",
        rows.len(),
        rows.len() - failed,
        failed
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::EulerQ { base, m, backend } => {
            run_euler_q(cli.format, base, m, backend)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GenEuler {
            base,
            character,
            n,
            t,
            multiple,
            backend,
        } => {
            run_gen_euler(cli.format, base, character, n, t, multiple, backend)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Integral {
            base,
            f,
            t,
            levels,
            character,
        } => {
            run_integral(cli.format, base, f, t, levels, character)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lq {
            base,
            character,
            s,
            t,
        } => {
            run_lq(cli.format, base, character, s, t)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            target:
                VerifyTarget::Theorem {
                    grid,
                    p,
                    q,
                    character,
                    n,
                    t,
                    prec,
                    min_agreement,
                },
        } => run_verify_theorem(
            cli.format,
            grid,
            p,
            q,
            character,
            n,
            t,
            prec,
            min_agreement,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
