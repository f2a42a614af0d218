//! Vanishing of `Ω¹` for square presentations via the Jacobian determinant.

use serde::Serialize;

use super::presentation::FinitePresentation;
use super::snf::smith_normal_form_mod;
use crate::arith::{invert_in_quotient, QElem, QuotientRing, UnitVerdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KahlerVerdict {
    /// `Ω¹ = 0`
    pub vanishes: bool,
    pub det: Option<String>,
    pub det_inverse: Option<String>,
    /// generators whose relation is zero; each contributes a free summand
    pub free_generators: Vec<String>,
    /// `Ω¹ ≅ ⊕ Z/p^e` over the base, from the Smith form of the
    /// presentation matrix (only for finite rings without `v`)
    pub omega_exponents: Option<Vec<u32>>,
    pub reason: Option<String>,
}

/// Determinant by cofactor expansion along the first row.
pub fn det_in_quotient(ring: &QuotientRing, m: &[Vec<QElem>]) -> QElem {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<QElem>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = ring.mul(&m[0][j], &det_in_quotient(ring, &minor));
                acc = if j % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Jacobian entries as elements of the quotient.
pub fn jacobian_in_quotient(
    pres: &FinitePresentation,
    ring: &QuotientRing,
) -> Result<Vec<Vec<QElem>>> {
    pres.jacobian()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| FinitePresentation::to_qelem(ring, e))
                .collect()
        })
        .collect()
}

/// Matrix over the base of `R^r → R^g`, `(a_r) ↦ (Σ_r a_r ∂f_r/∂x_i)_i`,
/// whose cokernel is `Ω¹`.
pub(crate) fn omega_matrix(ring: &QuotientRing, jac: &[Vec<QElem>]) -> Result<Vec<Vec<u64>>> {
    let d = ring.dimension();
    let r = jac.len();
    let g = ring.ngens();
    let mut out = vec![vec![0u64; r * d]; g * d];
    for (ri, row) in jac.iter().enumerate() {
        for (gi, entry) in row.iter().enumerate() {
            let block = ring.mult_matrix(entry)?;
            for (a, brow) in block.iter().enumerate() {
                for (b, x) in brow.iter().enumerate() {
                    out[gi * d + a][ri * d + b] = *x;
                }
            }
        }
    }
    Ok(out)
}

pub fn kahler_rank(pres: &FinitePresentation) -> Result<KahlerVerdict> {
    if !pres.is_square() {
        return Err(Error::Shape(format!(
            "{} generators but {} relations; pad with zero relations",
            pres.gens().len(),
            pres.rels().len()
        )));
    }
    pres.zpk()?;
    let free: Vec<String> = pres
        .rels()
        .iter()
        .zip(pres.gens())
        .filter(|(r, _)| r.is_empty())
        .map(|(_, g)| g.clone())
        .collect();
    if !free.is_empty() {
        return Ok(KahlerVerdict {
            vanishes: false,
            det: None,
            det_inverse: None,
            free_generators: free,
            omega_exponents: None,
            reason: Some("zero relations leave free generators".into()),
        });
    }
    let ring = pres.quotient_ring()?;
    let jac = jacobian_in_quotient(pres, &ring)?;
    let det = det_in_quotient(&ring, &jac);
    match invert_in_quotient(&ring, &det)? {
        UnitVerdict::Unit(inv) => {
            if !ring.is_one(&ring.mul(&det, &inv)) {
                return Err(Error::Internal("claimed inverse does not invert".into()));
            }
            Ok(KahlerVerdict {
                vanishes: true,
                det: Some(ring.display(&det)),
                det_inverse: Some(ring.display(&inv)),
                free_generators: vec![],
                omega_exponents: (!ring.has_v()).then(Vec::new),
                reason: None,
            })
        }
        UnitVerdict::NonUnit { reason } => {
            let omega_exponents = if ring.has_v() {
                None
            } else {
                let z = ring.base();
                let m = omega_matrix(&ring, &jac)?;
                let snf = smith_normal_form_mod(&m, &z);
                if !snf.verify_mod(&m, &z) {
                    return Err(Error::Internal("Smith form failed to verify".into()));
                }
                Some(snf.cokernel_exponents(&z))
            };
            Ok(KahlerVerdict {
                vanishes: false,
                det: Some(ring.display(&det)),
                det_inverse: None,
                free_generators: vec![],
                omega_exponents,
                reason: Some(reason),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = FinitePresentation::univariate(3, 2, "x", &[0, -1, 0, 1]).unwrap();
        let v = kahler_rank(&p).unwrap();
        assert!(v.vanishes);
        assert_eq!(v.det.as_deref(), Some("-1 + 3*x^2"));
        assert_eq!(v.det_inverse.as_deref(), Some("-1 - 3*x^2"));

        let p = FinitePresentation::univariate(3, 2, "x", &[0, 0, 0, 1]).unwrap();
        let v = kahler_rank(&p).unwrap();
        assert!(!v.vanishes);
        // Ω¹ = R/(3x²) with R = Z/9[x]/(x³): Z/9 ⊕ Z/9 ⊕ Z/3
        assert_eq!(v.omega_exponents, Some(vec![1, 2, 2]));

        let p = FinitePresentation::univariate(3, 1, "x", &[0, -1, 0, 1]).unwrap();
        assert!(kahler_rank(&p).unwrap().vanishes);
    }

    #[test]
    fn shape_and_free_generators() {
        let p = FinitePresentation::new(
            super::super::BaseRing::Zpk { p: 2, k: 1 },
            false,
            vec!["x".into()],
            vec![],
        )
        .unwrap();
        assert!(matches!(kahler_rank(&p), Err(Error::Shape(_))));
        let p = FinitePresentation::univariate(2, 1, "x", &[]).unwrap();
        let v = kahler_rank(&p).unwrap();
        assert!(!v.vanishes);
        assert_eq!(v.free_generators, vec!["x".to_string()]);
    }
}
