//! The height-one relation `v S^p - v^{p^j} S` over `Z/p^k[v^{±1}]` and its
//! Jacobian certificate.

use serde::Serialize;

use super::presentation::FinitePresentation;
use crate::arith::{check_prime, checked_pow, invert_in_quotient, Mono, UnitVerdict};
use crate::error::{Error, Result};

/// Smallest `t` with `t·n ≥ k`: the number of substitutions of the relation
/// needed before the error term lands in `p^k`.
pub fn iteration_count(n: u32, k: u32) -> Result<u32> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(
            "height and precision must be positive".into(),
        ));
    }
    Ok(k.div_ceil(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnCertificate {
    pub p: u64,
    pub k: u32,
    pub j: u32,
    pub relation: String,
    pub jacobian: String,
    /// `u = v^{1-p^j} S^{p-1}`, with Jacobian `-v^{p^j}(1 - p u)`
    pub u: String,
    /// `Σ_{i<k} (p u)^i`
    pub geometric_inverse: String,
    pub jacobian_inverse: String,
    pub iteration_count: u32,
    /// the general unit test agrees
    pub cross_checked: bool,
    pub etale: bool,
}

pub fn en_presentation_check(p: u64, k: u32, j: u32) -> Result<EnCertificate> {
    check_prime(p)?;
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if j < 1 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let pj = checked_pow(p, j)? as i64;
    let pres = FinitePresentation::univariate_v(p, k, "S", &[(1, p as u32, 1), (pj, 1, -1)])?;
    let ring = pres.quotient_ring()?;
    let z = ring.base();
    let jac = FinitePresentation::to_qelem(&ring, &pres.jacobian()[0][0])?;

    let mono = |v: i64, e: u32| Mono { v, exps: vec![e] };
    let u = ring.from_terms([(mono(1 - pj, p as u32 - 1), 1)]);
    let pu = ring.scale(&u, p % z.modulus);
    // J = -v^{p^j} (1 - p u)
    let factored = ring.neg(&ring.mul(&ring.v_pow(pj)?, &ring.sub(&ring.one(), &pu)));
    if factored != jac {
        return Err(Error::Internal(
            "Jacobian does not factor as expected".into(),
        ));
    }
    let mut series = ring.zero();
    let mut power = ring.one();
    for _ in 0..k {
        series = ring.add(&series, &power);
        power = ring.mul(&power, &pu);
    }
    if !ring.is_one(&ring.mul(&ring.sub(&ring.one(), &pu), &series)) {
        return Err(Error::Falsified(
            "the truncated geometric series is not an inverse".into(),
        ));
    }
    let inverse = ring.neg(&ring.mul(&ring.v_pow(-pj)?, &series));
    let etale = ring.is_one(&ring.mul(&jac, &inverse));
    // inverses are unique, so the general route must return the same normal form
    let cross_checked = match invert_in_quotient(&ring, &jac)? {
        UnitVerdict::Unit(h) => h == inverse,
        UnitVerdict::NonUnit { .. } => false,
    };
    Ok(EnCertificate {
        p,
        k,
        j,
        relation: pres.describe().remove(0),
        jacobian: ring.display(&jac),
        u: ring.display(&u),
        geometric_inverse: ring.display(&series),
        jacobian_inverse: ring.display(&inverse),
        iteration_count: iteration_count(1, k)?,
        cross_checked,
        etale,
    })
}
