//! Truncations `T_{l,k} = Z/p^k[s_0, …, s_l]/(s_i^p - s_i)` and their
//! reduction maps.

use rayon::prelude::*;
use serde::Serialize;

use super::kahler::{kahler_rank, KahlerVerdict};
use super::presentation::{BaseRing, FinitePresentation, MPoly};
use crate::arith::{check_prime, ExactRational, Mono, QuotientRing, Zpk};
use crate::error::{Error, Result};

/// Full product tables are compared only up to this rank.
pub const FULL_TABLE_LIMIT: usize = 81;

/// Products of basis monomials expressed in the basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureTable {
    pub p: u64,
    pub k: u32,
    pub gens: Vec<String>,
    pub basis: Vec<Vec<u32>>,
    /// `products[a][b]` = coordinates of `basis[a] · basis[b]`
    pub products: Vec<Vec<Vec<u64>>>,
}

impl StructureTable {
    pub fn of(ring: &QuotientRing) -> Result<Self> {
        if ring.has_v() {
            return Err(Error::UnsupportedModule(
                "structure constants need a ring finite over Z/p^k".into(),
            ));
        }
        let basis = ring.basis();
        let elems: Vec<_> = basis
            .iter()
            .map(|m| ring.from_terms([(m.clone(), 1)]))
            .collect();
        let products = elems
            .iter()
            .map(|a| elems.iter().map(|b| ring.coords(&ring.mul(a, b))).collect())
            .collect::<Result<_>>()?;
        Ok(StructureTable {
            p: ring.base().p,
            k: ring.base().k,
            gens: ring.names().to_vec(),
            basis: basis.into_iter().map(|m| m.exps).collect(),
            products,
        })
    }

    /// Entries reduced mod `p^k'`.
    pub fn reduce(&self, k: u32) -> Result<Self> {
        let z = Zpk::new(self.p, self.k)?.reduce_to(k)?;
        Ok(StructureTable {
            k,
            products: self
                .products
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|x| x % z.modulus).collect())
                        .collect()
                })
                .collect(),
            ..self.clone()
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// `Z/p^k[s_0, …, s_l]/(s_i^p - s_i)`.
pub fn truncation_presentation(p: u64, k: u32, l: u32) -> Result<FinitePresentation> {
    check_prime(p)?;
    let g = l as usize + 1;
    let gens: Vec<String> = (0..g).map(|i| format!("s{i}")).collect();
    let rels = (0..g)
        .map(|i| {
            let mono = |e: u32| {
                let mut exps = vec![0; g];
                exps[i] = e;
                Mono { v: 0, exps }
            };
            MPoly::from([
                (mono(p as u32), ExactRational::one()),
                (mono(1), ExactRational::from_integer(-1)),
            ])
        })
        .collect();
    FinitePresentation::new(BaseRing::Zpk { p, k }, false, gens, rels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub k: u32,
    pub dimension: usize,
    /// `Ω¹` of each one-generator factor `Z/p^k[s_i]/(s_i^p - s_i)`
    pub factors: Vec<KahlerVerdict>,
    pub etale: bool,
    /// reducing level `k+1` mod `p^k` reproduces this level's table
    pub reduces_from_next: Option<bool>,
    pub full_table_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub p: u64,
    pub l: u32,
    pub k_max: u32,
    pub levels: Vec<TowerLevel>,
    pub holds: bool,
}

pub fn truncation_tower(p: u64, k_max: u32, l: u32) -> Result<TowerReport> {
    check_prime(p)?;
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let g = l as usize + 1;
    let dimension = (p as usize)
        .checked_pow(g as u32)
        .ok_or_else(|| Error::Precision("rank overflows".into()))?;
    let full = dimension <= FULL_TABLE_LIMIT;

    struct Built {
        factor_table: StructureTable,
        full_table: Option<StructureTable>,
        verdict: KahlerVerdict,
    }
    let built: Vec<Built> = (1..=k_max + 1)
        .into_par_iter()
        .map(|k| -> Result<Built> {
            let factor = truncation_presentation(p, k, 0)?;
            let verdict = kahler_rank(&factor)?;
            let factor_table = StructureTable::of(&factor.quotient_ring()?)?;
            let full_table = if full {
                Some(StructureTable::of(
                    &truncation_presentation(p, k, l)?.quotient_ring()?,
                )?)
            } else {
                None
            };
            Ok(Built {
                factor_table,
                full_table,
                verdict,
            })
        })
        .collect::<Result<_>>()?;

    let reduced_matches = |k: u32| -> Result<bool> {
        let (lo, hi) = (&built[k as usize - 1], &built[k as usize]);
        let factor_ok =
            hi.factor_table.reduce(k)?.to_json_string() == lo.factor_table.to_json_string();
        let full_ok = match (&lo.full_table, &hi.full_table) {
            (Some(a), Some(b)) => b.reduce(k)?.to_json_string() == a.to_json_string(),
            _ => true,
        };
        Ok(factor_ok && full_ok)
    };

    let mut levels = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let b = &built[k as usize - 1];
        levels.push(TowerLevel {
            k,
            dimension,
            factors: vec![b.verdict.clone(); g],
            etale: b.verdict.vanishes,
            reduces_from_next: if k < k_max {
                Some(reduced_matches(k)?)
            } else {
                None
            },
            full_table_checked: full,
        });
    }
    let holds = levels
        .iter()
        .all(|lv| lv.etale && lv.reduces_from_next != Some(false));
    Ok(TowerReport {
        p,
        l,
        k_max,
        levels,
        holds,
    })
}
