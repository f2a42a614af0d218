//! Command-line front end. [`run`] is pure: it takes the argument vector
//! and returns the exit code with both output streams, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for parse and domain errors.

mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::etale::{
    en_presentation_check, hensel_lift, kahler_rank, ko_membership, truncation_tower,
    verify_xi_basis, FinitePresentation,
};
use crate::invariants::{etale_over_invariants_check, is_invariant};
use crate::numpoly::{
    d_family, e_family, in_p_local_binomial, is_numerical, is_p_local_numerical,
    is_stably_numerical, parse_poly, to_binomial, to_monomial, verify_plocal_basis, AnyPoly,
    LaurentPoly, MembershipVerdict, PolyJson,
};

pub use report::{build_report, Report, ReportEntry};

/// Default cap on `basis --deg`, overridden by `NUMPOLY_MAX_DEG`.
pub const DEFAULT_MAX_DEG: u64 = 25;

/// Exact binomial Hensel lifts are refused beyond this final degree.
pub const HENSEL_MAX_DEGREE: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "numpoly",
    version,
    about = "Exact arithmetic for numerical polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Change of basis; EXPR is an expression in w or a polynomial JSON document.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        expr: String,
    },
    /// Membership in A, A^st, their localizations, or KO_0KO.
    Member {
        #[arg(long, value_enum)]
        ring: Ring,
        #[arg(long)]
        prime: Option<u64>,
        expr: String,
    },
    /// The d_m or e_m generator families.
    Gens {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max: u32,
    },
    /// Unimodularity of the p-local monomial basis up to a degree.
    Basis {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        deg: u64,
    },
    /// Lift an approximate idempotent s^p = s mod p to precision p^K.
    Hensel {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        target: u32,
        expr: String,
    },
    /// Étale certificates.
    Etale {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        j: u32,
    },
    /// Invertibility of the digit-monomial evaluation matrix.
    Xi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
    },
    /// Run every check and write one JSON report.
    Report {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long)]
        out: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Binomial,
    Monomial,
}

/// The rings accepted by `member`.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    #[value(name = "A")]
    A,
    #[value(name = "Ast")]
    Ast,
    #[value(name = "Ap")]
    Ap,
    #[value(name = "Astp")]
    Astp,
    #[value(name = "KO")]
    Ko,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    D,
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Preset {
    Trunc,
    Zeta,
    En,
    Negcontrol,
}

/// A JSON value together with its verdict.
struct Answer {
    value: Value,
    affirmative: bool,
}

fn answer(value: impl Serialize, affirmative: bool) -> Result<Answer> {
    Ok(Answer {
        value: serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?,
        affirmative,
    })
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(a) => Outcome {
            code: if a.affirmative { 0 } else { 1 },
            stdout: format!("{}\n", a.value),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Membership of `f` in `ring`. `A` and `Ast` with a prime mean their
/// localizations; `Ap` and `Astp` require one; `KO` is 2-local.
pub fn membership(ring: Ring, prime: Option<u64>, f: &LaurentPoly) -> Result<MembershipVerdict> {
    match (ring, prime) {
        (Ring::A, None) => is_numerical(f),
        (Ring::A | Ring::Ap, Some(p)) => is_p_local_numerical(f, p),
        (Ring::Ast, p) | (Ring::Astp, p @ Some(_)) => is_stably_numerical(f, p),
        (Ring::Ap | Ring::Astp, None) => Err(Error::Domain("this ring needs --prime".into())),
        (Ring::Ko, None | Some(2)) => ko_membership(f),
        (Ring::Ko, Some(p)) => Err(Error::Domain(format!(
            "KO membership is 2-local, not {p}-local"
        ))),
    }
}

fn read_poly(expr: &str) -> Result<AnyPoly> {
    if expr.trim_start().starts_with('{') {
        PolyJson::parse(expr)?.into_poly()
    } else {
        parse_poly(expr).map(AnyPoly::Monomial)
    }
}

fn read_laurent(expr: &str) -> Result<LaurentPoly> {
    Ok(match read_poly(expr)? {
        AnyPoly::Monomial(f) => f,
        AnyPoly::Binomial(b) => to_monomial(&b),
    })
}

fn max_degree() -> Result<u64> {
    match std::env::var("NUMPOLY_MAX_DEG") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("NUMPOLY_MAX_DEG={s} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_DEG),
    }
}

fn dispatch(cmd: Command) -> Result<Answer> {
    match cmd {
        Command::Convert { to, expr } => {
            let out = match (to, read_poly(&expr)?) {
                (Target::Binomial, AnyPoly::Monomial(f)) => PolyJson::from(&to_binomial(&f)?),
                (Target::Binomial, AnyPoly::Binomial(b)) => PolyJson::from(&b),
                (Target::Monomial, AnyPoly::Monomial(f)) => PolyJson::from(&f),
                (Target::Monomial, AnyPoly::Binomial(b)) => PolyJson::from(&to_monomial(&b)),
            };
            answer(out, true)
        }
        Command::Member { ring, prime, expr } => {
            let f = read_laurent(&expr)?;
            let verdict = membership(ring, prime, &f)?;
            let member = verdict.member;
            answer(verdict, member)
        }
        Command::Gens { family, prime, max } => gens(family, prime, max),
        Command::Basis { prime, deg } => {
            let cap = max_degree()?;
            if deg > cap {
                return Err(Error::Domain(format!(
                    "degree {deg} exceeds the cap {cap} (set NUMPOLY_MAX_DEG to raise it)"
                )));
            }
            let r = verify_plocal_basis(prime, deg)?;
            let holds = r.holds;
            answer(r, holds)
        }
        Command::Hensel {
            prime,
            target,
            expr,
        } => {
            let f = read_laurent(&expr)?;
            let s0 = to_binomial(&f)?;
            let deg = s0.degree().unwrap_or(0);
            let final_deg = (prime as u128).pow(target.saturating_sub(1)) * deg as u128;
            if final_deg > HENSEL_MAX_DEGREE as u128 {
                return Err(Error::Domain(format!(
                    "the lift would have degree {final_deg} > {HENSEL_MAX_DEGREE}"
                )));
            }
            match hensel_lift(&s0, prime, target) {
                Ok(s) => answer(
                    json!({"p": prime, "target": target, "lifted": true,
                           "degree": s.degree().unwrap_or(0), "result": PolyJson::from(&s)}),
                    true,
                ),
                Err(e @ Error::NotApproxIdempotent { .. }) => answer(
                    json!({"p": prime, "target": target, "lifted": false, "reason": e.to_string()}),
                    false,
                ),
                Err(e) => Err(e),
            }
        }
        Command::Etale {
            preset,
            prime,
            k,
            l,
            j,
        } => match preset {
            Preset::Trunc => {
                let r = truncation_tower(prime, k, l)?;
                let ok = r.holds;
                answer(r, ok)
            }
            Preset::Zeta => {
                let c = etale_over_invariants_check(prime, k)?;
                let ok = c.etale;
                answer(c, ok)
            }
            Preset::En => {
                let c = en_presentation_check(prime, k, j)?;
                let ok = c.etale && c.cross_checked;
                answer(c, ok)
            }
            Preset::Negcontrol => {
                let mut coeffs = vec![0i64; prime as usize + 1];
                coeffs[prime as usize] = 1;
                let pres = FinitePresentation::univariate(prime, k, "x", &coeffs)?;
                let v = kahler_rank(&pres)?;
                let rejected = !v.vanishes;
                answer(
                    json!({"relation": pres.describe()[0], "kahler": v, "rejected": rejected}),
                    rejected,
                )
            }
        },
        Command::Xi { d, k } => {
            let r = verify_xi_basis(d, k)?;
            let ok = r.invertible;
            answer(r, ok)
        }
        Command::Report { all, primes, out } => {
            debug_assert!(all);
            let report = build_report(&primes)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Internal(e.to_string()))?;
            std::fs::write(&out, text + "\n")
                .map_err(|e| Error::Domain(format!("cannot write {out}: {e}")))?;
            let ok = report.failed == 0;
            answer(
                json!({"out": out, "checks": report.entries.len(), "passed": report.passed, "failed": report.failed}),
                ok,
            )
        }
    }
}

fn gens(family: Family, p: u64, max: u32) -> Result<Answer> {
    match family {
        Family::D => {
            let rows: Vec<Value> = d_family(p, max)?
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    json!({"index": i + 1, "degree": d.degree().unwrap_or(0),
                           "binomial": PolyJson::from(d), "in_p_local_ring": in_p_local_binomial(d, p)})
                })
                .collect();
            let ok = rows.iter().all(|r| r["in_p_local_ring"] == true);
            answer(json!({"family": "d", "p": p, "generators": rows}), ok)
        }
        Family::E => {
            let rows = e_family(p, max)?
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let invariant = if p == 2 {
                        None
                    } else {
                        Some(is_invariant(e, p)?)
                    };
                    Ok(json!({"index": i + 1, "degree": e.degree().unwrap_or(0),
                              "expr": e.to_string(), "monomial": PolyJson::from(e),
                              "stably_numerical": is_stably_numerical(e, Some(p))?,
                              "invariant": invariant}))
                })
                .collect::<Result<Vec<Value>>>()?;
            let ok = rows
                .iter()
                .all(|r| r["stably_numerical"]["member"] == true && r["invariant"] != false);
            answer(json!({"family": "e", "p": p, "generators": rows}), ok)
        }
    }
}
