//! Low-degree André-Quillen cohomology from the naive cotangent complex:
//! `AQ⁰` and `AQ¹` are the kernel and cokernel of
//! `Hom(free on generators, M) → Hom(free on relations, M)` induced by the
//! Jacobian.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::kahler::jacobian_in_quotient;
use super::presentation::{BaseRing, FinitePresentation, MPoly};
use super::snf::{smith_normal_form, smith_normal_form_mod};
use crate::arith::{ExactRational, Zpk};
use crate::error::{Error, Result};

/// The coefficient module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleDescriptor {
    /// The algebra itself (finite free over `Z/p^k`; no `v`).
    Regular,
    /// The base ring, an algebra-module through evaluation at a point
    /// (values for the generators and, if adjoined, for `v`).
    Point {
        values: Vec<ExactRational>,
        v: Option<ExactRational>,
    },
}

/// A finitely generated module over the base, up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "over", rename_all = "lowercase")]
pub enum BaseModule {
    /// `⊕ Z/p^e` over `e ∈ cyclic_exponents`
    Zpk {
        p: u64,
        k: u32,
        cyclic_exponents: Vec<u32>,
    },
    /// `Q^rank`
    Q { rank: usize },
}

impl BaseModule {
    pub fn is_zero(&self) -> bool {
        match self {
            BaseModule::Zpk {
                cyclic_exponents, ..
            } => cyclic_exponents.is_empty(),
            BaseModule::Q { rank } => *rank == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AqLow {
    pub aq0: BaseModule,
    pub aq1: BaseModule,
}

impl AqLow {
    pub fn vanishes(&self) -> bool {
        self.aq0.is_zero() && self.aq1.is_zero()
    }
}

pub fn aq_low(pres: &FinitePresentation, module: &ModuleDescriptor) -> Result<AqLow> {
    match (pres.base(), module) {
        (BaseRing::Zpk { .. }, ModuleDescriptor::Regular) => regular(pres),
        (BaseRing::Zpk { p, k }, ModuleDescriptor::Point { values, v }) => {
            let z = Zpk::new(p, k)?;
            let m = point_jacobian(pres, values, v.as_ref(), |q| z.from_rational(q))?;
            Ok(mod_complex(&m, pres.rels().len(), pres.gens().len(), &z))
        }
        (BaseRing::Rationals, ModuleDescriptor::Point { values, v }) => {
            if v.is_some() {
                return Err(Error::UnsupportedModule("no unit v over Q".into()));
            }
            rational(pres, values)
        }
        (BaseRing::Rationals, ModuleDescriptor::Regular) => Err(Error::UnsupportedModule(
            "a polynomial algebra over Q is not finite over Q".into(),
        )),
    }
}

fn regular(pres: &FinitePresentation) -> Result<AqLow> {
    if pres.unit_v() {
        return Err(Error::UnsupportedModule(
            "with v adjoined the algebra is not finite free over Z/p^k".into(),
        ));
    }
    if pres.rels().iter().any(|r| r.is_empty()) {
        return Err(Error::UnsupportedModule(
            "zero relations make the algebra infinite over the base".into(),
        ));
    }
    let ring = pres.quotient_ring()?;
    let z = ring.base();
    let jac = jacobian_in_quotient(pres, &ring)?;
    let d = ring.dimension();
    let (r, g) = (pres.rels().len(), pres.gens().len());
    // δ ∈ M^g ↦ (Σ_i ∂f_r/∂x_i δ_i)_r
    let mut m = vec![vec![0u64; g * d]; r * d];
    for (ri, row) in jac.iter().enumerate() {
        for (gi, entry) in row.iter().enumerate() {
            for (a, brow) in ring.mult_matrix(entry)?.iter().enumerate() {
                for (b, x) in brow.iter().enumerate() {
                    m[ri * d + a][gi * d + b] = *x;
                }
            }
        }
    }
    Ok(mod_complex(&m, r * d, g * d, &z))
}

fn mod_complex(m: &[Vec<u64>], rows: usize, cols: usize, z: &Zpk) -> AqLow {
    let module = |e: Vec<u32>| BaseModule::Zpk {
        p: z.p,
        k: z.k,
        cyclic_exponents: e,
    };
    if rows == 0 || cols == 0 {
        return AqLow {
            aq0: module(vec![z.k; cols]),
            aq1: module(vec![z.k; rows]),
        };
    }
    let snf = smith_normal_form_mod(m, z);
    debug_assert!(snf.verify_mod(m, z));
    AqLow {
        aq0: module(snf.kernel_exponents(z)),
        aq1: module(snf.cokernel_exponents(z)),
    }
}

/// Evaluates a polynomial at the point.
fn eval_at(
    poly: &MPoly,
    values: &[ExactRational],
    v: Option<&ExactRational>,
) -> Result<ExactRational> {
    let mut acc = ExactRational::zero();
    for (m, c) in poly {
        let mut t = c.clone();
        for (x, e) in values.iter().zip(&m.exps) {
            t *= x.pow(*e as i64)?;
        }
        if m.v != 0 {
            let v =
                v.ok_or_else(|| Error::UnsupportedModule("the point needs a value for v".into()))?;
            t *= v.pow(m.v)?;
        }
        acc += t;
    }
    Ok(acc)
}

/// Jacobian at a point, as an `r × g` matrix of base elements, after
/// checking that the relations vanish there.
fn point_jacobian<T>(
    pres: &FinitePresentation,
    values: &[ExactRational],
    v: Option<&ExactRational>,
    conv: impl Fn(&ExactRational) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    if values.len() != pres.gens().len() {
        return Err(Error::Shape(format!(
            "{} values for {} generators",
            values.len(),
            pres.gens().len()
        )));
    }
    if pres.unit_v() != v.is_some() {
        return Err(Error::UnsupportedModule(
            "give a value for v exactly when v is adjoined".into(),
        ));
    }
    let on_base = |q: &ExactRational| -> Result<bool> {
        match pres.base() {
            BaseRing::Zpk { p, k } => Ok(Zpk::new(p, k)?.from_rational(q)? == 0),
            BaseRing::Rationals => Ok(q.is_zero()),
        }
    };
    if let (BaseRing::Zpk { p, .. }, Some(v)) = (pres.base(), v) {
        if Zpk::new(p, 1)?.from_rational(v)? == 0 {
            return Err(Error::UnsupportedModule("v must map to a unit".into()));
        }
    }
    for (i, rel) in pres.rels().iter().enumerate() {
        if !on_base(&eval_at(rel, values, v)?)? {
            return Err(Error::UnsupportedModule(format!(
                "relation {i} does not vanish at the point"
            )));
        }
    }
    pres.jacobian()
        .iter()
        .map(|row| row.iter().map(|e| conv(&eval_at(e, values, v)?)).collect())
        .collect()
}

fn rational(pres: &FinitePresentation, values: &[ExactRational]) -> Result<AqLow> {
    let m = point_jacobian(pres, values, None, |q| Ok(q.clone()))?;
    let (r, g) = (pres.rels().len(), pres.gens().len());
    // clear denominators row by row; the rank is unchanged
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let rank = if r == 0 || g == 0 {
        0
    } else {
        let snf = smith_normal_form(&ints);
        debug_assert!(snf.verify(&ints));
        snf.rank()
    };
    Ok(AqLow {
        aq0: BaseModule::Q { rank: g - rank },
        aq1: BaseModule::Q { rank: r - rank },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn etale_truncation_vanishes() {
        let p = FinitePresentation::univariate(3, 1, "x", &[0, -1, 0, 1]).unwrap();
        assert!(aq_low(&p, &ModuleDescriptor::Regular).unwrap().vanishes());
    }

    #[test]
    fn polynomial_ring_over_q() {
        let p =
            FinitePresentation::new(BaseRing::Rationals, false, vec!["w".into()], vec![]).unwrap();
        let pt = ModuleDescriptor::Point {
            values: vec![ExactRational::zero()],
            v: None,
        };
        let aq = aq_low(&p, &pt).unwrap();
        assert_eq!(aq.aq0, BaseModule::Q { rank: 1 });
        assert_eq!(aq.aq1, BaseModule::Q { rank: 0 });
    }

    #[test]
    fn nilpotent_control() {
        let p = FinitePresentation::univariate(3, 2, "x", &[0, 0, 0, 1]).unwrap();
        let pt = ModuleDescriptor::Point {
            values: vec![ExactRational::zero()],
            v: None,
        };
        let aq = aq_low(&p, &pt).unwrap();
        assert!(!aq.aq1.is_zero());
        assert!(!aq_low(&p, &ModuleDescriptor::Regular)
            .unwrap()
            .aq1
            .is_zero());
        let bad = ModuleDescriptor::Point {
            values: vec![ExactRational::one()],
            v: None,
        };
        assert!(matches!(aq_low(&p, &bad), Err(Error::UnsupportedModule(_))));
    }
}
