//! Quotients of `Z/p^k[v^{±1}][x_0, …, x_{g-1}]` by one monic relation per
//! generator, each relation involving only its own generator (and `v`).
//! Such rings are finite free over `Z/p^k[v^{±1}]` with the monomial basis
//! `x^e`, `e_i < deg_i`, so every element has a unique normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::fp_poly::bareiss_det;
use super::{FpPoly, Zpk};
use crate::error::{Error, Result};

/// Laurent polynomial in `v` with residues as coefficients.
pub type LaurentV = BTreeMap<i64, u64>;

/// A monomial `v^v · x_0^{e_0} ⋯ x_{g-1}^{e_{g-1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mono {
    pub v: i64,
    pub exps: Vec<u32>,
}

impl Mono {
    pub fn one(ngens: usize) -> Self {
        Mono {
            v: 0,
            exps: vec![0; ngens],
        }
    }
}

/// An element of a [`QuotientRing`], always held in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QElem {
    terms: BTreeMap<Mono, u64>,
}

impl QElem {
    pub fn terms(&self) -> &BTreeMap<Mono, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct QuotientRing {
    base: Zpk,
    has_v: bool,
    names: Vec<String>,
    degrees: Vec<u32>,
    /// `x_i^{d_i} = Σ_e tails[i][e] · x_i^e`
    tails: Vec<Vec<LaurentV>>,
    /// normal forms of `x_i^e` for `e <= 2 d_i - 2`
    pow_tables: Vec<Vec<Vec<LaurentV>>>,
}

/// Result of a unit test in a quotient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitVerdict {
    Unit(QElem),
    /// The reduction mod `p` is a zero divisor; `reason` names the witness.
    NonUnit {
        reason: String,
    },
}

impl UnitVerdict {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitVerdict::Unit(_))
    }
}

fn lv_mul(z: &Zpk, a: &LaurentV, b: &LaurentV) -> LaurentV {
    let mut out = LaurentV::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let c = z.mul(*ca, *cb);
            lv_add_term(z, &mut out, ea + eb, c);
        }
    }
    out
}

fn lv_add_term(z: &Zpk, acc: &mut LaurentV, e: i64, c: u64) {
    if c == 0 {
        return;
    }
    let slot = acc.entry(e).or_insert(0);
    *slot = z.add(*slot, c);
    if *slot == 0 {
        acc.remove(&e);
    }
}

impl QuotientRing {
    /// Builds the ring from univariate relations; `relations[i]` maps
    /// `(v-exponent, x_i-exponent)` to a residue. The leading coefficient
    /// in `x_i` must be a unit times a power of `v`.
    pub fn new(
        base: Zpk,
        has_v: bool,
        names: Vec<String>,
        relations: Vec<BTreeMap<(i64, u32), u64>>,
    ) -> Result<Self> {
        if names.len() != relations.len() {
            return Err(Error::Shape(format!(
                "{} generators but {} relations",
                names.len(),
                relations.len()
            )));
        }
        let mut degrees = Vec::new();
        let mut tails = Vec::new();
        for (i, rel) in relations.iter().enumerate() {
            let mut by_t: BTreeMap<u32, LaurentV> = BTreeMap::new();
            for (&(ve, te), &c) in rel {
                if !has_v && ve != 0 {
                    return Err(Error::UnsupportedPresentation(
                        "relation mentions v but the base has no unit v".into(),
                    ));
                }
                lv_add_term(&base, by_t.entry(te).or_default(), ve, c % base.modulus);
            }
            by_t.retain(|_, lv| !lv.is_empty());
            let (&d, lead) = by_t.iter().next_back().ok_or_else(|| {
                Error::UnsupportedPresentation(format!(
                    "relation for {} is zero; the quotient is not finite",
                    names[i]
                ))
            })?;
            if d == 0 {
                return Err(Error::UnsupportedPresentation(format!(
                    "relation for {} is constant",
                    names[i]
                )));
            }
            let (lead_v, lead_c) = match lead.iter().collect::<Vec<_>>().as_slice() {
                [(e, c)] if base.is_unit(**c) => (**e, **c),
                _ => {
                    return Err(Error::UnsupportedPresentation(format!(
                        "relation for {} is not monic after unit normalization",
                        names[i]
                    )))
                }
            };
            let inv = base.inv(lead_c).expect("unit");
            let mut tail = vec![LaurentV::new(); d as usize];
            for (te, lv) in &by_t {
                if *te == d {
                    continue;
                }
                for (ve, c) in lv {
                    // x^d = -(lead^{-1}) Σ lower
                    let c = base.neg(base.mul(*c, inv));
                    lv_add_term(&base, &mut tail[*te as usize], ve - lead_v, c);
                }
            }
            degrees.push(d);
            tails.push(tail);
        }
        let mut ring = QuotientRing {
            base,
            has_v,
            names,
            degrees,
            tails,
            pow_tables: Vec::new(),
        };
        ring.pow_tables = (0..ring.ngens())
            .map(|i| {
                let d = ring.degrees[i] as usize;
                let mut table = Vec::with_capacity(2 * d);
                let mut cur = vec![LaurentV::new(); d];
                cur[0].insert(0, 1 % base.modulus);
                for _ in 0..(2 * d - 1) {
                    table.push(cur.clone());
                    cur = ring.times_gen(i, &cur);
                }
                table
            })
            .collect();
        Ok(ring)
    }

    fn times_gen(&self, i: usize, r: &[LaurentV]) -> Vec<LaurentV> {
        let d = self.degrees[i] as usize;
        let mut out = vec![LaurentV::new(); d];
        out[1..d].clone_from_slice(&r[..d - 1]);
        let top = &r[d - 1];
        if !top.is_empty() {
            for (j, t) in self.tails[i].iter().enumerate() {
                for (e, c) in lv_mul(&self.base, top, t) {
                    lv_add_term(&self.base, &mut out[j], e, c);
                }
            }
        }
        out
    }

    fn power_nf(&self, i: usize, e: u32) -> Vec<LaurentV> {
        let table = &self.pow_tables[i];
        if (e as usize) < table.len() {
            return table[e as usize].clone();
        }
        let mut cur = table.last().unwrap().clone();
        for _ in table.len() - 1..e as usize {
            cur = self.times_gen(i, &cur);
        }
        cur
    }

    pub fn base(&self) -> Zpk {
        self.base
    }

    pub fn has_v(&self) -> bool {
        self.has_v
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Rank over the base ring.
    pub fn dimension(&self) -> usize {
        self.degrees.iter().map(|d| *d as usize).product()
    }

    pub fn zero(&self) -> QElem {
        QElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i64) -> QElem {
        self.from_terms([(Mono::one(self.ngens()), self.base.from_i64(c))])
    }

    pub fn one(&self) -> QElem {
        self.constant(1)
    }

    pub fn gen(&self, i: usize) -> QElem {
        let mut m = Mono::one(self.ngens());
        m.exps[i] = 1;
        self.from_terms([(m, 1)])
    }

    pub fn v_pow(&self, e: i64) -> Result<QElem> {
        if !self.has_v && e != 0 {
            return Err(Error::Domain("the base has no unit v".into()));
        }
        Ok(self.from_terms([(
            Mono {
                v: e,
                exps: vec![0; self.ngens()],
            },
            1,
        )]))
    }

    /// Normal form of an arbitrary linear combination of monomials.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Mono, u64)>) -> QElem {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), self.ngens(), "monomial arity");
            if !self.has_v {
                assert_eq!(m.v, 0, "v-exponent in a ring without v");
            }
            self.add_reduced(&mut acc, m.v, &m.exps, c % self.base.modulus);
        }
        QElem { terms: acc }
    }

    fn add_reduced(&self, acc: &mut BTreeMap<Mono, u64>, v: i64, exps: &[u32], c: u64) {
        if c == 0 {
            return;
        }
        if exps.iter().zip(&self.degrees).all(|(e, d)| e < d) {
            add_term(
                &self.base,
                acc,
                Mono {
                    v,
                    exps: exps.to_vec(),
                },
                c,
            );
            return;
        }
        let mut partial: Vec<(i64, Vec<u32>, u64)> = vec![(v, Vec::new(), c)];
        for (i, &e) in exps.iter().enumerate() {
            if e < self.degrees[i] {
                for t in partial.iter_mut() {
                    t.1.push(e);
                }
                continue;
            }
            let nf = self.power_nf(i, e);
            let mut next = Vec::new();
            for (pv, pe, pc) in &partial {
                for (j, lv) in nf.iter().enumerate() {
                    for (ve, cc) in lv {
                        let c = self.base.mul(*pc, *cc);
                        if c != 0 {
                            let mut ne = pe.clone();
                            ne.push(j as u32);
                            next.push((pv + ve, ne, c));
                        }
                    }
                }
            }
            partial = next;
        }
        for (pv, pe, pc) in partial {
            add_term(&self.base, acc, Mono { v: pv, exps: pe }, pc);
        }
    }

    pub fn add(&self, a: &QElem, b: &QElem) -> QElem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            add_term(&self.base, &mut terms, m.clone(), *c);
        }
        QElem { terms }
    }

    pub fn neg(&self, a: &QElem) -> QElem {
        QElem {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &QElem, c: u64) -> QElem {
        let mut terms = BTreeMap::new();
        for (m, x) in &a.terms {
            add_term(&self.base, &mut terms, m.clone(), self.base.mul(*x, c));
        }
        QElem { terms }
    }

    pub fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let mut acc = BTreeMap::new();
        let mut exps = vec![0u32; self.ngens()];
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = self.base.mul(*ca, *cb);
                if c == 0 {
                    continue;
                }
                for (k, e) in exps.iter_mut().enumerate() {
                    *e = ma.exps[k] + mb.exps[k];
                }
                self.add_reduced(&mut acc, ma.v + mb.v, &exps, c);
            }
        }
        QElem { terms: acc }
    }

    pub fn pow(&self, a: &QElem, mut e: u64) -> QElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_one(&self, a: &QElem) -> bool {
        *a == self.one()
    }

    /// Basis monomials `x^e` (`v`-exponent 0) in index order.
    pub fn basis(&self) -> Vec<Mono> {
        (0..self.dimension()).map(|i| self.basis_mono(i)).collect()
    }

    fn basis_mono(&self, mut idx: usize) -> Mono {
        let mut exps = vec![0u32; self.ngens()];
        for i in (0..self.ngens()).rev() {
            let d = self.degrees[i] as usize;
            exps[i] = (idx % d) as u32;
            idx /= d;
        }
        Mono { v: 0, exps }
    }

    fn basis_index(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.degrees)
            .fold(0, |acc, (e, d)| acc * *d as usize + *e as usize)
    }

    /// Coordinates over the base; each coordinate is a Laurent polynomial in `v`.
    pub fn coords_v(&self, a: &QElem) -> Vec<LaurentV> {
        let mut out = vec![LaurentV::new(); self.dimension()];
        for (m, c) in &a.terms {
            lv_add_term(&self.base, &mut out[self.basis_index(&m.exps)], m.v, *c);
        }
        out
    }

    /// Coordinates over `Z/p^k`; only meaningful without `v`.
    pub fn coords(&self, a: &QElem) -> Result<Vec<u64>> {
        if self.has_v {
            return Err(Error::UnsupportedModule(
                "the ring is not finite over Z/p^k when v is adjoined".into(),
            ));
        }
        let mut out = vec![0u64; self.dimension()];
        for (m, c) in &a.terms {
            out[self.basis_index(&m.exps)] = *c;
        }
        Ok(out)
    }

    /// Matrix of multiplication by `a` on the monomial basis (columns are
    /// images of basis vectors). Requires a `v`-free ring.
    pub fn mult_matrix(&self, a: &QElem) -> Result<Vec<Vec<u64>>> {
        let n = self.dimension();
        let mut m = vec![vec![0u64; n]; n];
        for (j, b) in self.basis().into_iter().enumerate() {
            let col = self.coords(&self.mul(a, &self.from_terms([(b, 1)])))?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Same ring with coefficients reduced to `Z/p^k'`.
    pub fn reduce_precision(&self, k: u32) -> Result<QuotientRing> {
        let base = self.base.reduce_to(k)?;
        let relations = (0..self.ngens())
            .map(|i| {
                let mut rel = BTreeMap::new();
                let d = self.degrees[i];
                rel.insert((0, d), 1 % base.modulus);
                for (e, lv) in self.tails[i].iter().enumerate() {
                    for (ve, c) in lv {
                        let c = base.neg(*c % base.modulus);
                        if c != 0 {
                            rel.insert((*ve, e as u32), c);
                        }
                    }
                }
                rel
            })
            .collect();
        QuotientRing::new(base, self.has_v, self.names.clone(), relations)
    }

    /// Maps an element into a ring of lower precision with the same shape.
    pub fn reduce_elem(&self, target: &QuotientRing, a: &QElem) -> QElem {
        target.from_terms(a.terms.iter().map(|(m, c)| (m.clone(), *c)))
    }

    /// Relation of generator `i` mod `p` as a polynomial over `F_p`
    /// (only for rings without `v`).
    fn relation_mod_p(&self, i: usize) -> FpPoly {
        let p = self.base.p;
        let d = self.degrees[i] as usize;
        let mut c = vec![0u64; d + 1];
        c[d] = 1;
        for (e, lv) in self.tails[i].iter().enumerate() {
            let t = lv.get(&0).copied().unwrap_or(0) % p;
            c[e] = (p - t) % p;
        }
        FpPoly::new(p, c)
    }

    pub fn display(&self, a: &QElem) -> String {
        Displayed {
            ring: self,
            elem: a,
        }
        .to_string()
    }

    /// Newton iteration `h <- h (2 - g h)` from an inverse mod `p`.
    fn newton_lift(&self, g: &QElem, h0: QElem) -> Result<QElem> {
        let two = self.constant(2);
        let mut h = h0;
        let mut correct = 1u32;
        loop {
            if self.is_one(&self.mul(g, &h)) {
                return Ok(h);
            }
            if correct >= self.base.k {
                return Err(Error::Internal(
                    "Newton lift failed to converge on a unit".into(),
                ));
            }
            h = self.mul(&h, &self.sub(&two, &self.mul(g, &h)));
            correct *= 2;
        }
    }

    /// Inverse mod `p` via the extended Euclidean algorithm in `F_p[x]`,
    /// followed by Newton lifting. Single generator, no `v`.
    pub fn invert_via_gcd(&self, g: &QElem) -> Result<UnitVerdict> {
        if self.ngens() != 1 || self.has_v {
            return Err(Error::UnsupportedPresentation(
                "the gcd route needs one generator and no v".into(),
            ));
        }
        let p = self.base.p;
        let coords = self.coords(g)?;
        let gbar = FpPoly::new(p, coords.iter().map(|c| c % p).collect());
        let f = self.relation_mod_p(0);
        let (d, s, _) = FpPoly::ext_gcd(&gbar, &f);
        if d.degree() != Some(0) {
            return Ok(UnitVerdict::NonUnit {
                reason: format!(
                    "gcd with the relation mod {p} has degree {}",
                    d.degree().map_or("-inf".to_string(), |x| x.to_string())
                ),
            });
        }
        let h0 = self.from_terms(s.coeffs().iter().enumerate().map(|(e, c)| {
            (
                Mono {
                    v: 0,
                    exps: vec![e as u32],
                },
                *c,
            )
        }));
        self.newton_lift(g, h0).map(UnitVerdict::Unit)
    }

    /// Inverse mod `p` through the norm: the determinant of multiplication
    /// by `g` over `F_p[v^{±1}]` must be a monomial; Cramer's rule then gives
    /// the inverse, which is Newton-lifted.
    pub fn invert_via_norm(&self, g: &QElem) -> Result<UnitVerdict> {
        let p = self.base.p;
        let n = self.dimension();
        let basis = self.basis();
        // columns of multiplication by g, reduced mod p
        let mut cols: Vec<Vec<LaurentV>> = Vec::with_capacity(n);
        let mut shift = 0i64;
        for b in &basis {
            let col = self.coords_v(&self.mul(g, &self.from_terms([(b.clone(), 1)])));
            let col: Vec<LaurentV> = col
                .into_iter()
                .map(|lv| {
                    lv.into_iter()
                        .map(|(e, c)| (e, c % p))
                        .filter(|(_, c)| *c != 0)
                        .collect()
                })
                .collect();
            for lv in &col {
                if let Some((e, _)) = lv.iter().next() {
                    shift = shift.max(-e);
                }
            }
            cols.push(col);
        }
        let to_fp = |lv: &LaurentV| -> FpPoly {
            let mut c = Vec::new();
            for (e, x) in lv {
                let idx = (e + shift) as usize;
                if c.len() <= idx {
                    c.resize(idx + 1, 0);
                }
                c[idx] = *x;
            }
            FpPoly::new(p, c)
        };
        let matrix: Vec<Vec<FpPoly>> = (0..n)
            .map(|i| (0..n).map(|j| to_fp(&cols[j][i])).collect())
            .collect();
        let det = bareiss_det(matrix.clone(), p);
        let (dc, de) = match det.as_monomial() {
            Some(m) => m,
            None => {
                return Ok(UnitVerdict::NonUnit {
                    reason: format!("norm mod {p} is not a unit: {:?}", det.coeffs()),
                })
            }
        };
        let dc_inv = super::modinv_u64(dc, p).expect("nonzero mod p");
        let one_idx = self.basis_index(&vec![0; self.ngens()]);
        // M' x = v^shift e_one, with M' = v^shift M
        let rhs = FpPoly::monomial(p, 1, shift as usize);
        let mut h0_terms = Vec::new();
        for i in 0..n {
            let mut mi = matrix.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = if r == one_idx {
                    rhs.clone()
                } else {
                    FpPoly::zero(p)
                };
            }
            let di = bareiss_det(mi, p);
            for (e, c) in di.coeffs().iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let mut m = basis[i].clone();
                m.v = e as i64 - de as i64;
                h0_terms.push((m, super::mulmod(*c, dc_inv, p)));
            }
        }
        let h0 = self.from_terms(h0_terms);
        self.newton_lift(g, h0).map(UnitVerdict::Unit)
    }
}

fn add_term(z: &Zpk, acc: &mut BTreeMap<Mono, u64>, m: Mono, c: u64) {
    if c == 0 {
        return;
    }
    let slot = acc.entry(m.clone()).or_insert(0);
    *slot = z.add(*slot, c);
    if *slot == 0 {
        acc.remove(&m);
    }
}

struct Displayed<'a> {
    ring: &'a QuotientRing,
    elem: &'a QElem,
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.elem.terms.iter().enumerate() {
            let c = self.ring.base.signed(*c);
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if m.v != 0 {
                factors.push(format!("v^{}", m.v));
            }
            for (name, e) in self.ring.names.iter().zip(&m.exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let abs = c.unsigned_abs();
            if abs != 1 || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Inverts `g` in a finite quotient, or certifies it is not a unit. The
/// single-generator `v`-free case follows the `F_p[x]` gcd route; all other
/// shapes go through the norm.
pub fn invert_in_quotient(ring: &QuotientRing, g: &QElem) -> Result<UnitVerdict> {
    if ring.ngens() == 1 && !ring.has_v() {
        ring.invert_via_gcd(g)
    } else {
        ring.invert_via_norm(g)
    }
}
