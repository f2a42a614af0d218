//! The polynomial JSON document:
//! `{"basis":"monomial"|"binomial","terms":[{"k":<int>,"coeff":"a/b"}]}`.

use serde::{Deserialize, Serialize};

use super::{BinomialPoly, LaurentPoly};
use crate::arith::ExactRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Binomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub k: i64,
    pub coeff: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub basis: Basis,
    pub terms: Vec<Term>,
}

/// A polynomial in either basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPoly {
    Monomial(LaurentPoly),
    Binomial(BinomialPoly),
}

impl From<&LaurentPoly> for PolyJson {
    fn from(f: &LaurentPoly) -> Self {
        PolyJson {
            basis: Basis::Monomial,
            terms: f
                .terms()
                .iter()
                .map(|(k, c)| Term {
                    k: *k,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl From<&BinomialPoly> for PolyJson {
    fn from(b: &BinomialPoly) -> Self {
        PolyJson {
            basis: Basis::Binomial,
            terms: b
                .terms()
                .iter()
                .map(|(k, c)| Term {
                    k: *k as i64,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn into_poly(self) -> Result<AnyPoly> {
        Ok(match self.basis {
            Basis::Monomial => AnyPoly::Monomial(LaurentPoly::from_terms(
                self.terms.into_iter().map(|t| (t.k, t.coeff)),
            )),
            Basis::Binomial => {
                let terms = self
                    .terms
                    .into_iter()
                    .map(|t| {
                        u64::try_from(t.k).map(|k| (k, t.coeff)).map_err(|_| {
                            Error::Domain(format!("binomial index {} is negative", t.k))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyPoly::Binomial(BinomialPoly::from_terms(terms))
            }
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            offset: e.column(),
            message: e.to_string(),
        })
    }
}
