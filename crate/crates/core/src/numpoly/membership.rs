//! Decision procedures for the rings `A`, `A^st` and their p-localizations.
//!
//! Write `f = g / p^a` with `g` p-integral. Then `f` takes p-integral values
//! on `Z_(p)` (resp. on its units) iff `g(u) ≡ 0 mod p^a` for every residue
//! (resp. unit residue) `u mod p^a`. When `p^a` is too large to sweep, the
//! same question is answered in the binomial basis: `f ∈ A_(p)` iff its
//! binomial coordinates are p-integral, and a Laurent `f = w^{-s} h` lies in
//! `A^st_(p)` iff each `x ↦ h(r + p x)`, `0 < r < p`, lies in `A_(p)`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::binomial::{forward_differences, horner, to_binomial};
use super::LaurentPoly;
use crate::arith::ExactRational;
use crate::arith::{
    check_prime, checked_pow, ord_p_int, ord_p_unchecked, prime_factors, Valuation,
};
use crate::error::{Error, Result};

/// Largest `p^a` swept residue by residue.
pub const SWEEP_LIMIT: u64 = 1 << 20;

/// The p-local rings decided here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LocalRing {
    /// `A_(p)`: p-integral values on all of `Z_(p)`.
    Numerical,
    /// `A^st_(p)`: p-integral values on the units of `Z_(p)`.
    StablyNumerical,
}

/// Evidence that a polynomial is not in the ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// `p^a · f(u) ≢ 0 mod p^a`, i.e. `f(u)` is not p-integral.
    Residue { p: u64, a: u32, u: u64 },
    /// An odd exponent, which breaks `f(-w) = f(w)`.
    OddExponent { odd_exponent: i64 },
}

impl Witness {
    /// Re-checks the witness by exact evaluation, independently of the
    /// procedure that produced it.
    pub fn verify(&self, f: &LaurentPoly) -> bool {
        match self {
            Witness::Residue { p, u, .. } => {
                if *u == 0 && !f.is_polynomial() {
                    return false;
                }
                match f.eval_int(*u as i64) {
                    Ok(v) => matches!(ord_p_unchecked(&v, *p), Valuation::Finite(x) if x < 0),
                    Err(_) => false,
                }
            }
            Witness::OddExponent { odd_exponent } => {
                odd_exponent.rem_euclid(2) == 1 && !f.coeff(*odd_exponent).is_zero()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl MembershipVerdict {
    pub fn member() -> Self {
        MembershipVerdict {
            member: true,
            witness: None,
        }
    }

    pub fn rejected(w: Witness) -> Self {
        MembershipVerdict {
            member: false,
            witness: Some(w),
        }
    }
}

/// `a = max(0, -min ord_p(coefficients))`.
pub fn denominator_exponent(f: &LaurentPoly, p: u64) -> u32 {
    f.terms()
        .values()
        .filter_map(|c| ord_p_unchecked(c, p).finite())
        .map(|v| (-v).max(0) as u32)
        .max()
        .unwrap_or(0)
}

/// Primes dividing some coefficient denominator.
pub fn denominator_primes(f: &LaurentPoly) -> Vec<u64> {
    let (_, d) = f.integer_form();
    prime_factors(&d)
}

/// Residue sweep: returns the smallest failing residue, if any.
/// `h` is `w^s · f` (a polynomial) scaled by `p^a`.
fn sweep(f: &LaurentPoly, p: u64, a: u32, units_only: bool) -> Result<Option<u64>> {
    let m = checked_pow(p, a)?;
    let s = f.min_exponent().map_or(0, |e| (-e).max(0));
    let h = f.shift_exponents(s);
    let deg = h.degree().unwrap_or(0);
    let mut coeffs = vec![0u64; deg as usize + 1];
    for (e, c) in h.terms() {
        coeffs[*e as usize] = c
            .mul_pow(p, a as i64)
            .residue_mod(m)
            .ok_or_else(|| Error::Internal("scaled coefficient not p-integral".into()))?;
    }
    let eval = |u: u64| -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, c| {
            ((acc as u128 * u as u128 + *c as u128) % m as u128) as u64
        })
    };
    let fails = |u: &u64| (!units_only || !u.is_multiple_of(p)) && eval(*u) != 0;
    Ok(if m > 4096 {
        (0..m).into_par_iter().find_first(fails)
    } else {
        (0..m).find(fails)
    })
}

fn require_prime(p: u64) -> Result<()> {
    check_prime(p)
}

/// Membership in `A_(p)` by the residue sweep (falls back to the binomial
/// criterion when `p^a` exceeds [`SWEEP_LIMIT`]).
pub fn is_p_local_numerical(f: &LaurentPoly, p: u64) -> Result<MembershipVerdict> {
    require_prime(p)?;
    f.require_polynomial("A_(p) membership")?;
    let a = denominator_exponent(f, p);
    if a == 0 {
        return Ok(MembershipVerdict::member());
    }
    if checked_pow(p, a).map_or(true, |m| m > SWEEP_LIMIT) {
        return mahler_local(f, p, LocalRing::Numerical);
    }
    Ok(match sweep(f, p, a, false)? {
        None => MembershipVerdict::member(),
        Some(u) => MembershipVerdict::rejected(Witness::Residue { p, a, u }),
    })
}

/// Membership in `A^st_(p)` (when `p` is given) or `A^st`.
pub fn is_stably_numerical(f: &LaurentPoly, p: Option<u64>) -> Result<MembershipVerdict> {
    match p {
        Some(p) => stably_local(f, p),
        None => {
            for q in denominator_primes(f) {
                let v = stably_local(f, q)?;
                if !v.member {
                    return Ok(v);
                }
            }
            Ok(MembershipVerdict::member())
        }
    }
}

fn stably_local(f: &LaurentPoly, p: u64) -> Result<MembershipVerdict> {
    require_prime(p)?;
    let a = denominator_exponent(f, p);
    if a == 0 {
        return Ok(MembershipVerdict::member());
    }
    if checked_pow(p, a).map_or(true, |m| m > SWEEP_LIMIT) {
        return mahler_local(f, p, LocalRing::StablyNumerical);
    }
    Ok(match sweep(f, p, a, true)? {
        None => MembershipVerdict::member(),
        Some(u) => MembershipVerdict::rejected(Witness::Residue { p, a, u }),
    })
}

/// The residue sweep alone, for either ring. Errors when `p^a` is beyond
/// [`SWEEP_LIMIT`].
pub fn residue_sweep(f: &LaurentPoly, p: u64, ring: LocalRing) -> Result<MembershipVerdict> {
    require_prime(p)?;
    if ring == LocalRing::Numerical {
        f.require_polynomial("A_(p) membership")?;
    }
    let a = denominator_exponent(f, p);
    if a == 0 {
        return Ok(MembershipVerdict::member());
    }
    let m = checked_pow(p, a)?;
    if m > SWEEP_LIMIT {
        return Err(Error::Precision(format!(
            "residue sweep over {p}^{a} residues exceeds the limit {SWEEP_LIMIT}"
        )));
    }
    Ok(match sweep(f, p, a, ring == LocalRing::StablyNumerical)? {
        None => MembershipVerdict::member(),
        Some(u) => MembershipVerdict::rejected(Witness::Residue { p, a, u }),
    })
}

/// First index whose forward difference at 0 has valuation below `ord_p(denom)`.
fn first_bad_difference(values: Vec<BigInt>, denom: &BigInt, p: u64) -> Option<u64> {
    let dv = ord_p_int(denom, p).finite().unwrap_or(0);
    forward_differences(values)
        .into_iter()
        .position(|d| match ord_p_int(&d, p) {
            Valuation::Infinite => false,
            Valuation::Finite(v) => v < dv,
        })
        .map(|n| n as u64)
}

/// Decision in the binomial basis, for either ring.
pub fn mahler_local(f: &LaurentPoly, p: u64, ring: LocalRing) -> Result<MembershipVerdict> {
    require_prime(p)?;
    let a = denominator_exponent(f, p);
    if a == 0 {
        return Ok(MembershipVerdict::member());
    }
    // the witness is reported mod p^a when that fits, else as found
    let reduce = |u: u64| checked_pow(p, a).map_or(u, |m| u % m);
    match ring {
        LocalRing::Numerical => {
            f.require_polynomial("A_(p) membership")?;
            let b = to_binomial(f)?;
            let bad = b
                .terms()
                .iter()
                .find(|(_, c)| matches!(ord_p_unchecked(c, p), Valuation::Finite(v) if v < 0));
            Ok(match bad {
                None => MembershipVerdict::member(),
                Some((n, _)) => MembershipVerdict::rejected(Witness::Residue {
                    p,
                    a,
                    u: reduce(*n),
                }),
            })
        }
        LocalRing::StablyNumerical => {
            let s = f.min_exponent().map_or(0, |e| (-e).max(0));
            let h = f.shift_exponents(s);
            let (ints, denom) = h.integer_form();
            let deg = h.degree().unwrap_or(0);
            let dense: Vec<BigInt> = (0..=deg)
                .map(|e| ints.get(&e).cloned().unwrap_or_else(BigInt::zero))
                .collect();
            for r in 1..p {
                let values = (0..=deg as u64)
                    .map(|x| horner(&dense, &BigInt::from(r + p * x)))
                    .collect();
                if let Some(n) = first_bad_difference(values, &denom, p) {
                    return Ok(MembershipVerdict::rejected(Witness::Residue {
                        p,
                        a,
                        u: reduce(r + p * n),
                    }));
                }
            }
            Ok(MembershipVerdict::member())
        }
    }
}

/// Membership in `A`. The primary decision is integrality of the binomial
/// coordinates; the per-prime residue sweep runs as an independent second
/// path and must agree.
pub fn is_numerical(f: &LaurentPoly) -> Result<MembershipVerdict> {
    f.require_polynomial("A membership")?;
    let by_basis = to_binomial(f)?.is_integral();
    let mut by_sweep = MembershipVerdict::member();
    for p in denominator_primes(f) {
        let v = is_p_local_numerical(f, p)?;
        if !v.member {
            by_sweep = v;
            break;
        }
    }
    if by_basis != by_sweep.member {
        return Err(Error::Internal(format!(
            "binomial integrality ({by_basis}) disagrees with the residue sweep for {f}"
        )));
    }
    Ok(by_sweep)
}

/// `f / p`, certified to stay in the given p-local ring.
pub fn p_divide_laurent(f: &LaurentPoly, p: u64, ring: LocalRing) -> Result<LaurentPoly> {
    require_prime(p)?;
    let q = f.scale(&ExactRational::new(1, p as i64)?);
    let verdict = match ring {
        LocalRing::Numerical => is_p_local_numerical(&q, p)?,
        LocalRing::StablyNumerical => stably_local(&q, p)?,
    };
    match verdict.witness {
        None => Ok(q),
        Some(Witness::Residue { u, .. }) => Err(Error::NotDivisible { p, index: u as i64 }),
        Some(w) => Err(Error::Internal(format!("unexpected witness {w:?}"))),
    }
}
