//! The deterministic checks behind `report --all`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::etale::{
    aq_low, en_presentation_check, hensel_tower_values, kahler_rank, ko_membership,
    truncation_presentation, truncation_tower, verify_xi_basis, BaseModule, BaseRing,
    FinitePresentation, ModuleDescriptor,
};
use crate::invariants::{
    etale_over_invariants_check, etale_over_invariants_control, invariant_generators,
    numeric_action_check,
};
use crate::numpoly::{
    d_family, e_family, in_p_local_binomial, is_stably_numerical, parse_poly, verify_plocal_basis,
    Witness,
};

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub check: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub primes: Vec<u64>,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<ReportEntry>,
}

struct Builder(Vec<ReportEntry>);

impl Builder {
    fn push(&mut self, check: String, passed: bool, detail: impl Serialize) -> Result<()> {
        let detail = serde_json::to_value(detail).map_err(|e| Error::Internal(e.to_string()))?;
        self.0.push(ReportEntry {
            check,
            passed,
            detail,
        });
        Ok(())
    }
}

pub fn build_report(primes: &[u64]) -> Result<Report> {
    let mut b = Builder(Vec::new());
    for &p in primes {
        generators(&mut b, p)?;
        let r = verify_plocal_basis(p, p * p)?;
        b.push(format!("basis p={p} deg={}", p * p), r.holds, r)?;
        for m in 0..=2 {
            let r = hensel_tower_values(p, m, 4)?;
            b.push(format!("hensel p={p} m={m} k=4"), r.holds, r)?;
        }
        for l in 0..=2 {
            let r = truncation_tower(p, 3, l)?;
            b.push(format!("tower p={p} l={l} k<=3"), r.holds, r)?;
        }
        let neg = negative_control(p, 2)?;
        b.push(format!("negcontrol p={p} k=2"), neg.0, neg.1)?;
        if p <= 3 {
            for j in 1..=3 {
                let c = en_presentation_check(p, 3, j)?;
                b.push(format!("en p={p} k=3 j={j}"), c.etale && c.cross_checked, c)?;
            }
        }
        if p != 2 {
            let c = etale_over_invariants_check(p, 3)?;
            b.push(format!("zeta p={p} k=3"), c.etale, c)?;
            let c = etale_over_invariants_control(p, 2)?;
            b.push(format!("zeta control p={p} k=2"), !c.etale, c)?;
            let t = invariant_generators(p, 3)?;
            b.push(format!("invariants p={p} m<=3"), t.holds, t)?;
            let f = parse_poly("w^-3 + 2*w^2 + w^4 + 5*w^8 - w")?;
            let c = numeric_action_check(&f, p, 4)?;
            b.push(format!("action average p={p} N=4"), c.agrees, c)?;
        }
    }
    aq_checks(&mut b)?;
    if primes.contains(&2) {
        ko_checks(&mut b)?;
    }
    let entries = b.0;
    let passed = entries.iter().filter(|e| e.passed).count();
    Ok(Report {
        primes: primes.to_vec(),
        passed,
        failed: entries.len() - passed,
        entries,
    })
}

fn generators(b: &mut Builder, p: u64) -> Result<()> {
    let ds = d_family(p, 3)?;
    let rows: Vec<Value> = ds
        .iter()
        .enumerate()
        .map(|(i, d)| json!({"m": i + 1, "degree": d.degree(), "in_p_local_ring": in_p_local_binomial(d, p)}))
        .collect();
    let ok = ds
        .iter()
        .enumerate()
        .all(|(i, d)| in_p_local_binomial(d, p) && d.degree() == Some(p.pow(i as u32 + 1)));
    b.push(format!("d family p={p} m<=3"), ok, rows)?;

    let es = e_family(p, 3)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let v = is_stably_numerical(e, Some(p))?;
        let expected = (p as i64 - 1) * (p as i64).pow(i as u32);
        ok &= v.member && e.degree() == Some(expected);
        rows.push(json!({"m": i + 1, "degree": e.degree(), "stably_numerical": v}));
    }
    b.push(format!("e family p={p} m<=3"), ok, rows)
}

fn negative_control(p: u64, k: u32) -> Result<(bool, Value)> {
    let mut coeffs = vec![0i64; p as usize + 1];
    coeffs[p as usize] = 1;
    let pres = FinitePresentation::univariate(p, k, "x", &coeffs)?;
    let v = kahler_rank(&pres)?;
    Ok((
        !v.vanishes,
        json!({"relation": pres.describe()[0], "kahler": v}),
    ))
}

fn aq_checks(b: &mut Builder) -> Result<()> {
    let pres = FinitePresentation::new(BaseRing::Rationals, false, vec!["w".into()], vec![])?;
    let point = ModuleDescriptor::Point {
        values: vec![ExactRational::zero()],
        v: None,
    };
    let a = aq_low(&pres, &point)?;
    let ok = matches!(
        (&a.aq0, &a.aq1),
        (BaseModule::Q { rank: 1 }, BaseModule::Q { rank: 0 })
    );
    b.push("aq Q[w] over Q".into(), ok, a)?;
    for (p, l) in [(2, 1), (3, 1), (2, 2)] {
        let pres = truncation_presentation(p, 2, l)?;
        let a = aq_low(&pres, &ModuleDescriptor::Regular)?;
        b.push(format!("aq truncation p={p} l={l} k=2"), a.vanishes(), a)?;
    }
    Ok(())
}

fn ko_checks(b: &mut Builder) -> Result<()> {
    for d in 0..=5 {
        let r = verify_xi_basis(d, 4)?;
        b.push(format!("xi basis d={d} k=4"), r.invertible, r)?;
    }
    let v = ko_membership(&parse_poly("(w^2-1)/8")?)?;
    b.push("ko accepts (w^2-1)/8".into(), v.member, v)?;
    let v = ko_membership(&parse_poly("(w^2-1)/16")?)?;
    let ok = !v.member && matches!(v.witness, Some(Witness::Residue { u: 3, .. }));
    b.push("ko rejects (w^2-1)/16".into(), ok, v)
}
