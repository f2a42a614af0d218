//! The 2-adic function algebra behind `KO_0 KO`: digit idempotents on
//! `1 + 8Z_2` (read through `x = 1 + 8t`) and membership of even stably
//! numerical Laurent polynomials.

use serde::Serialize;

use super::lcf::LocallyConstantFn;
use crate::arith::{ExactRational, Zpk};
use crate::error::{Error, Result};
use crate::numpoly::{is_stably_numerical, rational_det, LaurentPoly, MembershipVerdict, Witness};

/// `ξ_i`: the `i`-th binary digit of `t`, as a function with values in
/// `Z/2^k` and modulus of continuity `2^M`.
pub fn digit_function(i: u32, k: u32, m: u32) -> Result<LocallyConstantFn> {
    if i >= m {
        return Err(Error::Precision(format!(
            "digit {i} of t is not determined modulo 2^{m}"
        )));
    }
    LocallyConstantFn::from_fn(2, k, m, |t| (t >> i) & 1)
}

/// The monomial `Π_{i ∈ mask} ξ_i`, built by pointwise products.
pub fn xi_monomial(mask: u64, d: u32, k: u32) -> Result<LocallyConstantFn> {
    let m = d + 1;
    let mut acc = LocallyConstantFn::constant(2, k, 1)?.refine(m)?;
    for i in 0..m {
        if mask >> i & 1 == 1 {
            acc = acc.mul(&digit_function(i, k, m)?)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiBasisReport {
    pub d: u32,
    pub k: u32,
    /// number of monomials, and of residues `t mod 2^{d+1}`
    pub size: usize,
    pub det: ExactRational,
    pub invertible: bool,
}

/// Evaluates all square-free monomials in `ξ_0, …, ξ_d` at every residue
/// `t mod 2^{d+1}`; the square evaluation matrix must be invertible over
/// `Z/2^k`.
pub fn verify_xi_basis(d: u32, k: u32) -> Result<XiBasisReport> {
    Zpk::new(2, k)?;
    if d > 10 {
        return Err(Error::Precision("d is limited to 10".into()));
    }
    let size = 1usize << (d + 1);
    let rows = (0..size as u64)
        .map(|mask| {
            let f = xi_monomial(mask, d, k)?;
            Ok(f.table()
                .iter()
                .map(|x| ExactRational::from_integer(*x as i64))
                .collect())
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    let det = rational_det(rows);
    let invertible = det.is_integer() && det.numer().bit(0);
    Ok(XiBasisReport {
        d,
        k,
        size,
        det,
        invertible,
    })
}

/// Even (only even exponents) and stably numerical at 2.
pub fn ko_membership(f: &LaurentPoly) -> Result<MembershipVerdict> {
    if let Some(e) = f.terms().keys().find(|e| e.rem_euclid(2) == 1) {
        return Ok(MembershipVerdict::rejected(Witness::OddExponent {
            odd_exponent: *e,
        }));
    }
    is_stably_numerical(f, Some(2))
}
