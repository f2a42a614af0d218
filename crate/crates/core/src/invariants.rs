//! The action `ζ.f(w) = f(ζw)` of the Teichmüller `(p-1)`-st root of unity,
//! the averaging projection onto invariants, and the étale extension
//! `t^{p-1} = v` of the invariant subring.

use serde::Serialize;

use crate::arith::{
    check_prime, invert_in_quotient, teichmuller, Mono, PadicResidue, UnitVerdict, Zpk,
};
use crate::error::{Error, Result};
use crate::etale::{kahler_rank, FinitePresentation, KahlerVerdict};
use crate::numpoly::{e_family, is_stably_numerical, LaurentPoly, MembershipVerdict};

fn check_odd_prime(p: u64) -> Result<()> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::Domain("the action needs an odd prime".into()));
    }
    Ok(())
}

/// `E_ζ f`: the terms whose exponent is divisible by `p - 1`.
pub fn project_invariant(f: &LaurentPoly, p: u64) -> Result<LaurentPoly> {
    check_odd_prime(p)?;
    let q = p as i64 - 1;
    Ok(LaurentPoly::from_terms(
        f.terms()
            .iter()
            .filter(|(e, _)| e.rem_euclid(q) == 0)
            .map(|(e, c)| (*e, c.clone())),
    ))
}

pub fn is_invariant(f: &LaurentPoly, p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let q = p as i64 - 1;
    Ok(f.terms().keys().all(|e| e.rem_euclid(q) == 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaAction {
    pub prime: u64,
    pub precision: u32,
    pub zeta: PadicResidue,
}

impl ZetaAction {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(ZetaAction {
            prime: p,
            precision,
            zeta: teichmuller(p, precision)?,
        })
    }

    /// Coefficients of `f(ζ^r w)` mod `p^N`, by exponent.
    pub fn apply(&self, f: &LaurentPoly, r: u64) -> Result<Vec<(i64, u64)>> {
        let z = self.zeta.ring();
        let q = self.prime as i64 - 1;
        f.terms()
            .iter()
            .map(|(e, c)| {
                let a = z.from_rational(c)?;
                // ζ^{p-1} = 1, so exponents may be read mod p - 1
                let s = (r as i64 * e).rem_euclid(q) as u64;
                Ok((*e, z.mul(a, z.pow(self.zeta.value, s))))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionTerm {
    pub k: i64,
    pub average: u64,
    pub projected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub zeta: u64,
    pub terms: Vec<ActionTerm>,
    pub agrees: bool,
}

/// Compares `(1/(p-1)) Σ_r f(ζ^r w)` mod `p^N` with the exact projection.
pub fn numeric_action_check(f: &LaurentPoly, p: u64, precision: u32) -> Result<ActionCheck> {
    let action = ZetaAction::new(p, precision)?;
    let z = action.zeta.ring();
    let inv = z.inv(p - 1).expect("p - 1 is prime to p");
    let projected = project_invariant(f, p)?;
    let mut sums: Vec<(i64, u64)> = f.terms().keys().map(|e| (*e, 0)).collect();
    for r in 1..p {
        for (slot, (_, c)) in sums.iter_mut().zip(action.apply(f, r)?) {
            slot.1 = z.add(slot.1, c);
        }
    }
    let terms: Vec<ActionTerm> = sums
        .into_iter()
        .map(|(e, s)| {
            Ok(ActionTerm {
                k: e,
                average: z.mul(s, inv),
                projected: z.from_rational(&projected.coeff(e))?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ActionCheck {
        p,
        precision,
        zeta: action.zeta.value,
        agrees: terms.iter().all(|t| t.average == t.projected),
        terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantEtaleCertificate {
    pub p: u64,
    pub k: u32,
    pub relation: String,
    pub jacobian: String,
    /// `(p-1)^{-1} t v^{-1}`, checked to invert the Jacobian
    pub inverse: Option<String>,
    /// the general unit test returns the same inverse
    pub cross_checked: bool,
    pub kahler: KahlerVerdict,
    pub etale: bool,
}

/// `B = Z/p^k[v^{±1}][t]/(t^{p-1} - v)` is étale over `Z/p^k[v^{±1}]`.
pub fn etale_over_invariants_check(p: u64, k: u32) -> Result<InvariantEtaleCertificate> {
    check_odd_prime(p)?;
    let z = Zpk::new(p, k)?;
    let pres = FinitePresentation::univariate_v(p, k, "t", &[(0, p as u32 - 1, 1), (1, 0, -1)])?;
    let ring = pres.quotient_ring()?;
    let jac = FinitePresentation::to_qelem(&ring, &pres.jacobian()[0][0])?;
    let c = z.inv(p - 1).expect("p - 1 is prime to p");
    let candidate = ring.from_terms([(
        Mono {
            v: -1,
            exps: vec![1],
        },
        c,
    )]);
    let explicit = ring.is_one(&ring.mul(&jac, &candidate));
    let cross_checked = match invert_in_quotient(&ring, &jac)? {
        UnitVerdict::Unit(h) => h == candidate,
        UnitVerdict::NonUnit { .. } => false,
    };
    let kahler = kahler_rank(&pres)?;
    Ok(InvariantEtaleCertificate {
        p,
        k,
        relation: pres.describe().remove(0),
        jacobian: ring.display(&jac),
        inverse: explicit.then(|| ring.display(&candidate)),
        cross_checked,
        etale: explicit && cross_checked && kahler.vanishes,
        kahler,
    })
}

/// The same extension without the unit: `t^{p-1} = 0` is not étale.
pub fn etale_over_invariants_control(p: u64, k: u32) -> Result<InvariantEtaleCertificate> {
    check_odd_prime(p)?;
    let mut coeffs = vec![0i64; p as usize];
    coeffs[p as usize - 1] = 1;
    let pres = FinitePresentation::univariate(p, k, "t", &coeffs)?;
    let ring = pres.quotient_ring()?;
    let jac = FinitePresentation::to_qelem(&ring, &pres.jacobian()[0][0])?;
    let kahler = kahler_rank(&pres)?;
    Ok(InvariantEtaleCertificate {
        p,
        k,
        relation: pres.describe().remove(0),
        jacobian: ring.display(&jac),
        inverse: kahler.det_inverse.clone(),
        cross_checked: invert_in_quotient(&ring, &jac)?.is_unit() == kahler.vanishes,
        etale: kahler.vanishes,
        kahler,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub poly: String,
    pub invariant: bool,
    pub stably_numerical: MembershipVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTable {
    pub p: u64,
    pub m_max: u32,
    pub generators: Vec<GeneratorRow>,
    /// `w^{-1} e_m`, which is not fixed by the action
    pub diagnostics: Vec<GeneratorRow>,
    pub holds: bool,
}

/// Generators `w^{±(p-1)}, e_1, …, e_{m_max}` of the invariant subring with
/// their certificates.
pub fn invariant_generators(p: u64, m_max: u32) -> Result<InvariantTable> {
    check_odd_prime(p)?;
    let row = |name: String, f: &LaurentPoly| -> Result<GeneratorRow> {
        Ok(GeneratorRow {
            name,
            poly: f.to_string(),
            invariant: is_invariant(f, p)?,
            stably_numerical: is_stably_numerical(f, Some(p))?,
        })
    };
    let q = p as i64 - 1;
    let one = crate::arith::ExactRational::one();
    let mut generators = vec![
        row(format!("w^{q}"), &LaurentPoly::monomial(one.clone(), q))?,
        row(format!("w^(-{q})"), &LaurentPoly::monomial(one.clone(), -q))?,
    ];
    let mut diagnostics = Vec::new();
    let winv = LaurentPoly::monomial(one, -1);
    for (i, e) in e_family(p, m_max)?.iter().enumerate() {
        generators.push(row(format!("e_{}", i + 1), e)?);
        diagnostics.push(row(format!("w^(-1)*e_{}", i + 1), &(&winv * e))?);
    }
    let holds = generators
        .iter()
        .all(|g| g.invariant && g.stably_numerical.member)
        && diagnostics.iter().all(|d| !d.invariant);
    Ok(InvariantTable {
        p,
        m_max,
        generators,
        diagnostics,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numpoly::parse_poly;

    #[test]
    fn projection_examples() {
        let f = parse_poly("w^3").unwrap();
        assert!(project_invariant(&f, 5).unwrap().is_zero());
        let f = parse_poly("w^4 + w").unwrap();
        assert_eq!(
            project_invariant(&f, 5).unwrap(),
            parse_poly("w^4").unwrap()
        );
        let e2 = e_family(3, 2).unwrap().remove(1);
        assert_eq!(project_invariant(&e2, 3).unwrap(), e2);
        assert!(project_invariant(&f, 2).is_err());
    }

    #[test]
    fn numeric_average_examples() {
        let c = numeric_action_check(&parse_poly("w^2").unwrap(), 3, 3).unwrap();
        assert_eq!(c.zeta, 26);
        assert!(c.agrees);
        assert_eq!(c.terms[0].average, 1);
        let c = numeric_action_check(&LaurentPoly::w(), 3, 3).unwrap();
        assert_eq!(c.terms[0].average, 0);
        assert!(c.agrees);
        let c = numeric_action_check(&LaurentPoly::one(), 7, 4).unwrap();
        assert_eq!(c.terms[0].average, 1);
        assert!(numeric_action_check(&parse_poly("w/3").unwrap(), 3, 2).is_err());
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&parse_poly("w^4").unwrap(), 5).unwrap());
        assert!(!is_invariant(&LaurentPoly::w(), 5).unwrap());
        for e in e_family(3, 3).unwrap() {
            assert!(is_invariant(&e, 3).unwrap());
        }
    }

    #[test]
    fn etale_extension() {
        let c = etale_over_invariants_check(3, 2).unwrap();
        assert!(c.etale);
        assert_eq!(c.jacobian, "2*t");
        assert!(etale_over_invariants_check(5, 1).unwrap().etale);
        let ctl = etale_over_invariants_control(3, 1).unwrap();
        assert!(!ctl.etale);
        assert!(ctl.cross_checked);
    }

    #[test]
    fn generator_table() {
        let t = invariant_generators(3, 2).unwrap();
        assert!(t.holds);
        assert_eq!(t.generators.len(), 4);
        assert!(t.diagnostics.iter().all(|d| !d.invariant));
    }
}
