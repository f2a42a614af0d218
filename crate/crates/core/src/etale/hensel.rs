//! Lifting approximate idempotents `s^p ≡ s` to higher p-power precision.
//!
//! Two routes: exactly, on binomial expansions, and on value tables of
//! locally constant functions `Z_p → Z/p^k`. The iterate `s ↦ s^p` has
//! degree growing like `p^k`, so only the second scales.

use serde::Serialize;

use super::lcf::{binomial_table, LocallyConstantFn};
use crate::arith::{check_prime, checked_pow, ord_p_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::numpoly::BinomialPoly;

/// `s' = s + (s^p - s)`, after checking `s^p ≡ s mod p^n` coefficientwise.
pub fn hensel_step(s: &BinomialPoly, p: u64, n: u32) -> Result<BinomialPoly> {
    check_prime(p)?;
    let defect = &s.pow(p as u32) - s;
    check_defect(&defect, p, n)?;
    Ok(s + &defect)
}

fn check_defect(defect: &BinomialPoly, p: u64, n: u32) -> Result<()> {
    for (idx, c) in defect.terms() {
        if let Valuation::Finite(v) = ord_p_unchecked(c, p) {
            if v < n as i64 {
                return Err(Error::NotApproxIdempotent {
                    p,
                    n,
                    index: *idx,
                    valuation: v,
                });
            }
        }
    }
    Ok(())
}

/// Runs `target_k - 1` steps from `s0` (which must satisfy `s0^p ≡ s0 mod p`)
/// and checks `s^p ≡ s mod p^target_k` on the result.
pub fn hensel_lift(s0: &BinomialPoly, p: u64, target_k: u32) -> Result<BinomialPoly> {
    check_prime(p)?;
    if target_k < 1 {
        return Err(Error::Domain("target precision must be at least 1".into()));
    }
    let mut s = s0.clone();
    for n in 1..target_k {
        s = hensel_step(&s, p, n)?;
    }
    check_defect(&(&s.pow(p as u32) - &s), p, target_k)?;
    Ok(s)
}

/// `hensel_step` on a value table; `n` must not exceed the value precision.
pub fn hensel_step_values(s: &LocallyConstantFn, n: u32) -> Result<LocallyConstantFn> {
    if n > s.value_precision {
        return Err(Error::Precision(format!(
            "congruence mod p^{n} is not visible at value precision {}",
            s.value_precision
        )));
    }
    let defect = s.pow(s.prime).sub(s)?;
    step_with_defect(s, &defect, n)
}

fn step_with_defect(
    s: &LocallyConstantFn,
    defect: &LocallyConstantFn,
    n: u32,
) -> Result<LocallyConstantFn> {
    let e = defect.congruence_exponent();
    if e < n {
        return Err(Error::Falsified(format!(
            "s^p - s has valuation {e} < {n} at t = {}",
            defect.worst_point().unwrap_or(0)
        )));
    }
    s.add(defect)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HenselStep {
    pub step: u32,
    pub exponent_before: u32,
    pub exponent_after: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HenselReport {
    pub p: u64,
    pub m: u32,
    pub target_k: u32,
    /// values are tabulated on `Z/p^domain_modulus`
    pub domain_modulus: u32,
    pub steps: Vec<HenselStep>,
    pub final_exponent: u32,
    pub holds: bool,
}

/// Lifts `c_{p^m}` to an idempotent mod `p^target_k` on value tables.
///
/// `binom(u, p^m) mod p^k` has period `p^{k+m}` in `u` (Vandermonde:
/// `binom(p^{k+m}, j)` is divisible by `p^k` for `0 < j ≤ p^m`), so the
/// table on `Z/p^{k+m}` represents the element of `A/p^k A` exactly, and a
/// congruence holds in `A_(p)` iff it holds at every tabulated point.
pub fn hensel_tower_values(p: u64, m: u32, target_k: u32) -> Result<HenselReport> {
    check_prime(p)?;
    if target_k < 1 {
        return Err(Error::Domain("target precision must be at least 1".into()));
    }
    let n = checked_pow(p, m)?;
    let domain_modulus = target_k + m;
    let mut s = binomial_table(p, target_k, domain_modulus, n)?;
    let defect_of = |s: &LocallyConstantFn| s.pow(p).sub(s);
    let mut defect = defect_of(&s)?;
    let mut current = defect.congruence_exponent();
    if current < 1 {
        return Err(Error::Falsified(format!(
            "c_{n}^{p} - c_{n} is not divisible by {p}"
        )));
    }
    let mut steps = Vec::new();
    let mut holds = true;
    for step in 1..target_k {
        s = step_with_defect(&s, &defect, step)?;
        defect = defect_of(&s)?;
        let after = defect.congruence_exponent();
        holds &= after >= (current + 1).min(target_k);
        steps.push(HenselStep {
            step,
            exponent_before: current,
            exponent_after: after,
        });
        current = after;
    }
    Ok(HenselReport {
        p,
        m,
        target_k,
        domain_modulus,
        steps,
        final_exponent: current,
        holds: holds && current >= target_k,
    })
}
