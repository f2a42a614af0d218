//! Unimodularity of the p-local monomial basis
//! `w^{r_0} c_p^{r_1} c_{p^2}^{r_2} ⋯` (`0 ≤ r_k < p`) against `c_0, …, c_D`.

use serde::Serialize;

use super::binomial::{binom_product, BinomialPoly};
use crate::arith::{check_prime, ord_p_unchecked, ExactRational, Valuation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub p: u64,
    pub degree_bound: u64,
    /// `r_k` digits of each monomial, indexed by total degree.
    pub monomials: Vec<Vec<u64>>,
    pub det: ExactRational,
    pub ord_p_det: Valuation,
    pub holds: bool,
}

/// Base-p digits, least significant first.
fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Determinant by exact Gaussian elimination.
pub(crate) fn rational_det(mut m: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = m.len();
    let mut det = ExactRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return ExactRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

pub fn verify_plocal_basis(p: u64, degree_bound: u64) -> Result<BasisReport> {
    check_prime(p)?;
    let mut monomials = Vec::new();
    let mut rows = Vec::new();
    // each degree D has exactly one monomial: the base-p digits of D
    for deg in 0..=degree_bound {
        let r = digits(deg, p);
        let mut prod = BinomialPoly::one();
        for (k, &rk) in r.iter().enumerate() {
            let gen = BinomialPoly::basis(p.pow(k as u32));
            for _ in 0..rk {
                prod = binom_product(&prod, &gen);
            }
        }
        if prod.degree() != Some(deg) {
            return Err(Error::Internal(format!(
                "monomial {r:?} has degree {:?}, expected {deg}",
                prod.degree()
            )));
        }
        rows.push(
            (0..=degree_bound)
                .map(|n| prod.coeff(n))
                .collect::<Vec<_>>(),
        );
        monomials.push(r);
    }
    if rows.len() as u64 != degree_bound + 1 {
        return Err(Error::Internal("monomial enumeration is not square".into()));
    }
    let det = rational_det(rows);
    let ord = ord_p_unchecked(&det, p);
    Ok(BasisReport {
        p,
        degree_bound,
        monomials,
        holds: ord == Valuation::Finite(0),
        det,
        ord_p_det: ord,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = verify_plocal_basis(2, 3).unwrap();
        assert_eq!(r.monomials, vec![vec![], vec![1], vec![0, 1], vec![1, 1]]);
        assert_eq!(r.ord_p_det, Valuation::Finite(0));
        let r = verify_plocal_basis(3, 2).unwrap();
        assert_eq!(r.ord_p_det, Valuation::Finite(0));
        let r = verify_plocal_basis(7, 0).unwrap();
        assert_eq!(r.det, ExactRational::one());
    }

    #[test]
    fn direct_determinant_p2_deg3() {
        // rows: 1 = c0; w = c1; c2; w*c2 = 3c3 + 2c2, so det = 3
        let r = verify_plocal_basis(2, 3).unwrap();
        assert_eq!(r.det, ExactRational::from_integer(3));
    }

    #[test]
    fn non_basis_is_detected() {
        // w^3 in place of c_3 at degree 3 gives det divisible by 3
        let rows: Vec<Vec<ExactRational>> = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 1, 2, 0],
            vec![0, 1, 6, 6],
        ]
        .into_iter()
        .map(|r| r.into_iter().map(ExactRational::from).collect())
        .collect();
        let det = rational_det(rows);
        assert_eq!(det, ExactRational::from_integer(12));
        assert_eq!(ord_p_unchecked(&det, 3), Valuation::Finite(1));
    }
}
