//! Finitely presented algebras over `Z/p^k` (optionally with a unit `v`
//! adjoined) or over `Q`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{check_prime, ExactRational, Mono, QElem, QuotientRing, Zpk};
use crate::error::{Error, Result};

/// A polynomial in the generators (and `v^{±1}`), sparse.
pub type MPoly = BTreeMap<Mono, ExactRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseRing {
    /// `Z/p^k`
    Zpk { p: u64, k: u32 },
    /// `Q`
    Rationals,
}

/// One term of a relation in the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelTerm {
    pub coeff: ExactRational,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    pub v: i64,
    pub exp: Vec<u32>,
}

fn is_zero_i64(x: &i64) -> bool {
    *x == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawPresentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default)]
    unit_v: bool,
    gens: Vec<String>,
    rels: Vec<Vec<RelTerm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    base: BaseRing,
    unit_v: bool,
    gens: Vec<String>,
    rels: Vec<MPoly>,
}

impl FinitePresentation {
    /// Coefficients are reduced into `[0, p^k)` for a `Z/p^k` base and must
    /// be p-integral.
    pub fn new(base: BaseRing, unit_v: bool, gens: Vec<String>, rels: Vec<MPoly>) -> Result<Self> {
        if let BaseRing::Zpk { p, k } = base {
            check_prime(p)?;
            Zpk::new(p, k)?;
        }
        if unit_v && base == BaseRing::Rationals {
            return Err(Error::UnsupportedPresentation(
                "a unit v is only supported over Z/p^k".into(),
            ));
        }
        let mut clean = Vec::with_capacity(rels.len());
        for rel in rels {
            let mut out = MPoly::new();
            for (m, c) in rel {
                if m.exps.len() != gens.len() {
                    return Err(Error::Shape(format!(
                        "monomial with {} exponents for {} generators",
                        m.exps.len(),
                        gens.len()
                    )));
                }
                if m.v != 0 && !unit_v {
                    return Err(Error::UnsupportedPresentation(
                        "v appears but is not adjoined".into(),
                    ));
                }
                let c = match base {
                    BaseRing::Zpk { p, k } => {
                        let z = Zpk::new(p, k)?;
                        ExactRational::from_integer(z.from_rational(&c)?)
                    }
                    BaseRing::Rationals => c,
                };
                if !c.is_zero() {
                    let slot = out.entry(m).or_insert_with(ExactRational::zero);
                    *slot += c;
                }
            }
            out.retain(|_, c| !c.is_zero());
            clean.push(out);
        }
        Ok(FinitePresentation {
            base,
            unit_v,
            gens,
            rels: clean,
        })
    }

    /// One generator with relation `Σ coeffs[e] x^e` (`v`-free).
    pub fn univariate(p: u64, k: u32, name: &str, coeffs: &[i64]) -> Result<Self> {
        let rel = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(e, c)| {
                (
                    Mono {
                        v: 0,
                        exps: vec![e as u32],
                    },
                    ExactRational::from_integer(*c),
                )
            })
            .collect();
        FinitePresentation::new(BaseRing::Zpk { p, k }, false, vec![name.into()], vec![rel])
    }

    /// One generator with relation given as `(v-exponent, x-exponent, coeff)`.
    pub fn univariate_v(p: u64, k: u32, name: &str, terms: &[(i64, u32, i64)]) -> Result<Self> {
        let rel = terms
            .iter()
            .map(|(ve, e, c)| {
                (
                    Mono {
                        v: *ve,
                        exps: vec![*e],
                    },
                    ExactRational::from_integer(*c),
                )
            })
            .collect();
        FinitePresentation::new(BaseRing::Zpk { p, k }, true, vec![name.into()], vec![rel])
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn zpk(&self) -> Result<Zpk> {
        match self.base {
            BaseRing::Zpk { p, k } => Zpk::new(p, k),
            BaseRing::Rationals => Err(Error::UnsupportedPresentation("needs a Z/p^k base".into())),
        }
    }

    pub fn unit_v(&self) -> bool {
        self.unit_v
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rels(&self) -> &[MPoly] {
        &self.rels
    }

    pub fn is_square(&self) -> bool {
        self.gens.len() == self.rels.len()
    }

    /// Partial derivative of a relation in generator `i`.
    pub fn derivative(poly: &MPoly, i: usize) -> MPoly {
        let mut out = MPoly::new();
        for (m, c) in poly {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps[i] -= 1;
            let slot = out.entry(dm).or_insert_with(ExactRational::zero);
            *slot += c * &ExactRational::from_integer(e as i64);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `J[r][i] = ∂ rel_r / ∂ gen_i`.
    pub fn jacobian(&self) -> Vec<Vec<MPoly>> {
        self.rels
            .iter()
            .map(|r| {
                (0..self.gens.len())
                    .map(|i| Self::derivative(r, i))
                    .collect()
            })
            .collect()
    }

    /// Index of the single generator each relation involves, if the
    /// presentation is separated (a tensor product of one-generator algebras).
    fn separation(&self) -> Result<Vec<usize>> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "{} generators but {} relations",
                self.gens.len(),
                self.rels.len()
            )));
        }
        let mut owner = vec![None; self.gens.len()];
        for (r, rel) in self.rels.iter().enumerate() {
            let vars: Vec<usize> = (0..self.gens.len())
                .filter(|&i| rel.keys().any(|m| m.exps[i] > 0))
                .collect();
            let [i] = vars.as_slice() else {
                return Err(Error::UnsupportedPresentation(format!(
                    "relation {r} must involve exactly one generator"
                )));
            };
            if owner[*i].replace(r).is_some() {
                return Err(Error::UnsupportedPresentation(format!(
                    "two relations in generator {}",
                    self.gens[*i]
                )));
            }
        }
        Ok(owner.into_iter().map(|o| o.expect("bijective")).collect())
    }

    /// Normal-form arithmetic on the quotient. Needs a `Z/p^k` base and a
    /// separated presentation with relations monic up to a unit.
    pub fn quotient_ring(&self) -> Result<QuotientRing> {
        let z = self.zpk()?;
        let owner = self.separation()?;
        let relations = owner
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                self.rels[r]
                    .iter()
                    .map(|(m, c)| Ok(((m.v, m.exps[i]), z.from_rational(c)?)))
                    .collect::<Result<BTreeMap<_, _>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        QuotientRing::new(z, self.unit_v, self.gens.clone(), relations)
    }

    /// Image of a polynomial in the quotient.
    pub fn to_qelem(ring: &QuotientRing, poly: &MPoly) -> Result<QElem> {
        let z = ring.base();
        let terms = poly
            .iter()
            .map(|(m, c)| Ok((m.clone(), z.from_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ring.from_terms(terms))
    }

    /// The same presentation over `Z/p^{k'}`, `k' ≤ k`.
    pub fn reduce_precision(&self, k: u32) -> Result<Self> {
        let BaseRing::Zpk { p, k: k0 } = self.base else {
            return Err(Error::UnsupportedPresentation("needs a Z/p^k base".into()));
        };
        if k > k0 {
            return Err(Error::Precision(format!(
                "cannot raise precision {k0} to {k}"
            )));
        }
        FinitePresentation::new(
            BaseRing::Zpk { p, k },
            self.unit_v,
            self.gens.clone(),
            self.rels.clone(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (base, p, k) = match self.base {
            BaseRing::Zpk { p, k } => (None, Some(p), Some(k)),
            BaseRing::Rationals => (Some("Q".to_string()), None, None),
        };
        let raw = RawPresentation {
            base,
            p,
            k,
            unit_v: self.unit_v,
            gens: self.gens.clone(),
            rels: self
                .rels
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(m, c)| RelTerm {
                            coeff: c.clone(),
                            v: m.v,
                            exp: m.exps.clone(),
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawPresentation = serde_json::from_str(s).map_err(|e| Error::Parse {
            offset: e.column(),
            message: e.to_string(),
        })?;
        let base = match (raw.base.as_deref(), raw.p, raw.k) {
            (Some("Q"), None, None) => BaseRing::Rationals,
            (None, Some(p), Some(k)) => BaseRing::Zpk { p, k },
            _ => {
                return Err(Error::Parse {
                    offset: 0,
                    message: "give either \"p\" and \"k\", or \"base\":\"Q\"".into(),
                })
            }
        };
        let rels = raw
            .rels
            .into_iter()
            .map(|r| {
                let mut out = MPoly::new();
                for t in r {
                    let slot = out
                        .entry(Mono {
                            v: t.v,
                            exps: t.exp,
                        })
                        .or_insert_with(ExactRational::zero);
                    *slot += t.coeff;
                }
                out
            })
            .collect();
        FinitePresentation::new(base, raw.unit_v, raw.gens, rels)
    }

    /// Human-readable relation list.
    pub fn describe(&self) -> Vec<String> {
        self.rels
            .iter()
            .map(|r| format_mpoly(r, &self.gens))
            .collect()
    }
}

pub(crate) fn format_mpoly(poly: &MPoly, names: &[String]) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in poly.iter().rev().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = if c.is_negative() {
            -c.clone()
        } else {
            c.clone()
        };
        let mut factors = Vec::new();
        if m.v != 0 {
            factors.push(format!("v^{}", m.v));
        }
        for (n, e) in names.iter().zip(&m.exps) {
            match e {
                0 => {}
                1 => factors.push(n.clone()),
                _ => factors.push(format!("{n}^{e}")),
            }
        }
        if !abs.is_one() || factors.is_empty() {
            let a = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                abs.to_string()
            };
            factors.insert(0, a);
        }
        out.push_str(&factors.join("*"));
    }
    out
}
