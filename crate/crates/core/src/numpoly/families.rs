//! The generator families `d_m` and `e_m`, p-division, augmentations and
//! the shift automorphism.

use serde::Serialize;

use super::binomial::BinomialPoly;
use super::membership::{is_stably_numerical, p_divide_laurent, LocalRing};
use super::LaurentPoly;
use crate::arith::{check_prime, ord_p_unchecked, ExactRational, Valuation};
use crate::error::{Error, Result};

/// `f / p` in the binomial basis; every coordinate must have `ord_p ≥ 1`.
pub fn p_divide_binomial(f: &BinomialPoly, p: u64) -> Result<BinomialPoly> {
    check_prime(p)?;
    for (n, c) in f.terms() {
        match ord_p_unchecked(c, p) {
            Valuation::Finite(v) if v < 1 => {
                return Err(Error::NotDivisible {
                    p,
                    index: *n as i64,
                })
            }
            _ => {}
        }
    }
    Ok(f.scale(&ExactRational::new(1, p as i64)?))
}

/// True when every binomial coordinate is p-integral, i.e. `f ∈ A_(p)`.
pub fn in_p_local_binomial(f: &BinomialPoly, p: u64) -> bool {
    f.terms()
        .values()
        .all(|c| !matches!(ord_p_unchecked(c, p), Valuation::Finite(v) if v < 0))
}

/// `s^p - s` in the binomial basis.
pub(crate) fn frobenius_defect(s: &BinomialPoly, p: u64) -> BinomialPoly {
    &s.pow(p as u32) - s
}

/// `[d_1, …, d_{m_max}]` with `d_{m+1} = (c_{p^m}^p - c_{p^m}) / p`.
pub fn d_family(p: u64, m_max: u32) -> Result<Vec<BinomialPoly>> {
    check_prime(p)?;
    if m_max < 1 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 0..m_max {
        let pm = p
            .checked_pow(m)
            .ok_or_else(|| Error::Precision("p^m overflows".into()))?;
        let c = BinomialPoly::basis(pm);
        let d = p_divide_binomial(&frobenius_defect(&c, p), p).map_err(|e| {
            Error::Falsified(format!("d_{} is not defined over Z_({p}): {e}", m + 1))
        })?;
        check_certified(&d, p, pm * p, m + 1)?;
        out.push(d);
    }
    Ok(out)
}

fn check_certified(d: &BinomialPoly, p: u64, expected_deg: u64, idx: u32) -> Result<()> {
    if !in_p_local_binomial(d, p) {
        return Err(Error::Falsified(format!("d_{idx} is not in A_({p})")));
    }
    if d.degree() != Some(expected_deg) {
        return Err(Error::Falsified(format!(
            "deg d_{idx} = {:?}, expected {expected_deg}",
            d.degree()
        )));
    }
    Ok(())
}

/// `[d'_2, …]` with `d'_{m+1} = (d_m^p - d_m)/p` for `1 ≤ m ≤ m_max`.
pub fn d_prime_family(p: u64, m_max: u32) -> Result<Vec<BinomialPoly>> {
    let ds = d_family(p, m_max)?;
    ds.iter()
        .enumerate()
        .map(|(i, d)| {
            let m = i as u32 + 1;
            let dp = p_divide_binomial(&frobenius_defect(d, p), p).map_err(|e| {
                Error::Falsified(format!("d'_{} is not defined over Z_({p}): {e}", m + 1))
            })?;
            check_certified(&dp, p, p.pow(m + 1), m + 1)?;
            Ok(dp)
        })
        .collect()
}

/// `[e_1, …, e_{m_max}]` with `w^{p-1} - 1 = p e_1` and
/// `e_m^p - e_m = p e_{m+1}`, each certified in `A^st_(p)`.
pub fn e_family(p: u64, m_max: u32) -> Result<Vec<LaurentPoly>> {
    check_prime(p)?;
    if m_max < 1 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    let falsified = |m: u32, e: Error| Error::Falsified(format!("e_{m} over Z_({p}): {e}"));
    let start = &LaurentPoly::monomial(ExactRational::one(), p as i64 - 1) - &LaurentPoly::one();
    let mut e =
        p_divide_laurent(&start, p, LocalRing::StablyNumerical).map_err(|x| falsified(1, x))?;
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        if m > 1 {
            let defect = &e.pow(p as u32) - &e;
            e = p_divide_laurent(&defect, p, LocalRing::StablyNumerical)
                .map_err(|x| falsified(m, x))?;
        }
        let expected = (p as i64 - 1) * (p as i64).pow(m - 1);
        if e.degree() != Some(expected) {
            return Err(Error::Falsified(format!(
                "deg e_{m} = {:?}, expected {expected}",
                e.degree()
            )));
        }
        if !is_stably_numerical(&e, Some(p))?.member {
            return Err(Error::Falsified(format!("e_{m} is not in A^st_({p})")));
        }
        out.push(e.clone());
    }
    Ok(out)
}

/// The two augmentations: evaluation at 0 and at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Augmentation {
    Additive,
    Multiplicative,
}

pub fn augment(f: &LaurentPoly, which: Augmentation) -> Result<ExactRational> {
    match which {
        Augmentation::Additive => {
            f.require_polynomial("evaluation at 0")?;
            Ok(f.coeff(0))
        }
        Augmentation::Multiplicative => Ok(f.terms().values().cloned().sum()),
    }
}

/// `f(w) ↦ f(w + 1)`.
pub fn shift_auto(f: &LaurentPoly) -> Result<LaurentPoly> {
    f.compose_affine(&ExactRational::one(), &ExactRational::one())
}

#[cfg(test)]
mod tests {
    use super::super::binomial::{binom_product, to_binomial, to_monomial};
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn d_family_examples() {
        let d = d_family(2, 1).unwrap();
        assert_eq!(d[0], BinomialPoly::basis(2));
        let d3 = d_family(3, 2).unwrap();
        // (w^3 - w)/3 = 2 c_3 + 2 c_2 in the binomial basis
        let oracle = to_binomial(&LaurentPoly::from_terms([(3, q(1, 3)), (1, q(-1, 3))])).unwrap();
        let c1 = BinomialPoly::basis(1);
        let d1_direct =
            p_divide_binomial(&(&binom_product(&binom_product(&c1, &c1), &c1) - &c1), 3).unwrap();
        assert_eq!(d3[0], d1_direct);
        assert_eq!(d3[0], oracle);
        assert_eq!(d3[0].degree(), Some(3));
        assert_eq!(d3[1].degree(), Some(9));
    }

    #[test]
    fn p_divide_examples() {
        let c3 = BinomialPoly::basis(3);
        assert_eq!(p_divide_binomial(&c3.scale(&q(3, 1)), 3).unwrap(), c3);
        let d = p_divide_binomial(&frobenius_defect(&c3, 3), 3).unwrap();
        assert!(in_p_local_binomial(&d, 3));
        assert_eq!(
            p_divide_binomial(&BinomialPoly::basis(1), 2),
            Err(Error::NotDivisible { p: 2, index: 1 })
        );
    }

    #[test]
    fn e_family_examples() {
        let e = e_family(3, 2).unwrap();
        assert_eq!(e[0], LaurentPoly::from_terms([(2, q(1, 3)), (0, q(-1, 3))]));
        let e2 = &(&e[0].pow(3) - &e[0]) * &LaurentPoly::constant(q(1, 3));
        assert_eq!(e[1], e2);
        assert_eq!(e[1].degree(), Some(6));
        let e5 = e_family(5, 1).unwrap();
        assert!(e5[0].eval_int(1).unwrap().is_zero());
    }

    #[test]
    fn augmentation_examples() {
        for n in 0..6u64 {
            let cn = to_monomial(&BinomialPoly::basis(n));
            let x = augment(&cn, Augmentation::Multiplicative).unwrap();
            assert_eq!(x, q(if n <= 1 { 1 } else { 0 }, 1));
            let y = augment(&cn, Augmentation::Additive).unwrap();
            assert_eq!(y, q(if n == 0 { 1 } else { 0 }, 1));
        }
        let w2 = LaurentPoly::from_ints(&[0, 0, 1]);
        let s = shift_auto(&w2).unwrap();
        assert_eq!(s, LaurentPoly::from_ints(&[1, 2, 1]));
        assert_eq!(
            augment(&s, Augmentation::Additive).unwrap(),
            augment(&w2, Augmentation::Multiplicative).unwrap()
        );
        let winv = LaurentPoly::monomial(q(1, 1), -1);
        assert!(augment(&winv, Augmentation::Additive).is_err());
        assert_eq!(
            augment(&winv, Augmentation::Multiplicative).unwrap(),
            q(1, 1)
        );
    }
}
