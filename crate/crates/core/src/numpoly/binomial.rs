//! The binomial-coefficient basis `c_n(w) = w(w-1)⋯(w-n+1)/n!`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::arith::ExactRational;
use crate::error::Result;

/// A finite combination `Σ a_n c_n(w)` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinomialPoly {
    terms: BTreeMap<u64, ExactRational>,
}

impl BinomialPoly {
    pub fn zero() -> Self {
        BinomialPoly::default()
    }

    pub fn one() -> Self {
        BinomialPoly::basis(0)
    }

    /// The basis vector `c_n`.
    pub fn basis(n: u64) -> Self {
        BinomialPoly::from_terms([(n, ExactRational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, ExactRational)>) -> Self {
        let mut out = BinomialPoly::zero();
        for (n, c) in terms {
            out.add_term(n, c);
        }
        out
    }

    fn add_term(&mut self, n: u64, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&n);
                }
            }
            None => {
                self.terms.insert(n, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, ExactRational> {
        &self.terms
    }

    pub fn coeff(&self, n: u64) -> ExactRational {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Integer coordinates: exactly the elements of the ring of numerical
    /// polynomials.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(ExactRational::is_integer)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return BinomialPoly::zero();
        }
        BinomialPoly {
            terms: self.terms.iter().map(|(n, x)| (*n, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &BinomialPoly) -> Self {
        binom_product(self, other)
    }

    /// Repeated multiplication by `self`: the cost of a product is bilinear
    /// in the term counts, so squaring does not pay off here.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinomialPoly::one();
        for _ in 0..e {
            acc = binom_product(&acc, self);
        }
        acc
    }

    /// Value at an integer point: `Σ a_n binom(x, n)`.
    pub fn eval_int(&self, x: i64) -> ExactRational {
        self.terms
            .iter()
            .map(|(n, c)| c * &ExactRational::from_integer(binom_signed(x, *n)))
            .sum()
    }
}

/// `binom(x, n)` for any integer `x`, via the falling factorial.
fn binom_signed(x: i64, n: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= BigInt::from(x) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

impl<'a> Add<&'a BinomialPoly> for &'a BinomialPoly {
    type Output = BinomialPoly;
    fn add(self, rhs: &'a BinomialPoly) -> BinomialPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, c.clone());
        }
        out
    }
}

impl Neg for &BinomialPoly {
    type Output = BinomialPoly;
    fn neg(self) -> BinomialPoly {
        BinomialPoly {
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a BinomialPoly> for &'a BinomialPoly {
    type Output = BinomialPoly;
    fn sub(self, rhs: &'a BinomialPoly) -> BinomialPoly {
        self + &(-rhs)
    }
}

impl fmt::Display for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*c_{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinomialPoly({self})")
    }
}

/// Rows `0..=n` of Pascal's triangle.
pub(crate) fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `c_n(w)` in the monomial basis.
pub fn binomial_coefficient_fn(n: u64) -> LaurentPoly {
    to_monomial(&BinomialPoly::basis(n))
}

/// Both forms of `c_n(w)`.
pub fn c(n: u64) -> (BinomialPoly, LaurentPoly) {
    (BinomialPoly::basis(n), binomial_coefficient_fn(n))
}

/// Change of basis by forward differences: the coefficient of `c_n` is
/// `Δⁿ f(0)`.
pub fn to_binomial(f: &LaurentPoly) -> Result<BinomialPoly> {
    f.require_polynomial("conversion to the binomial basis")?;
    let Some(deg) = f.degree() else {
        return Ok(BinomialPoly::zero());
    };
    let (ints, denom) = f.integer_form();
    let dense: Vec<BigInt> = (0..=deg)
        .map(|e| ints.get(&e).cloned().unwrap_or_else(BigInt::zero))
        .collect();
    let values: Vec<BigInt> = (0..=deg)
        .map(|x| horner(&dense, &BigInt::from(x)))
        .collect();
    let diffs = forward_differences(values);
    Ok(BinomialPoly::from_terms(diffs.into_iter().enumerate().map(
        |(n, d)| {
            (
                n as u64,
                ExactRational::new(d, denom.clone()).expect("nonzero"),
            )
        },
    )))
}

pub(crate) fn horner(dense: &[BigInt], x: &BigInt) -> BigInt {
    dense
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `[Δ⁰v(0), Δ¹v(0), …]` from the values `v(0), v(1), …`.
pub(crate) fn forward_differences(mut values: Vec<BigInt>) -> Vec<BigInt> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    for level in 0..n {
        out.push(values[0].clone());
        for i in 0..n - level - 1 {
            values[i] = &values[i + 1] - &values[i];
        }
    }
    out
}

/// Expands `Σ a_n c_n(w)` into monomials, over the common denominator of
/// the `a_n / n!`.
pub fn to_monomial(b: &BinomialPoly) -> LaurentPoly {
    let Some(deg) = b.degree() else {
        return LaurentPoly::zero();
    };
    let mut fact = BigInt::one();
    let mut scaled = Vec::with_capacity(b.terms.len());
    for n in 0..=deg {
        if n > 0 {
            fact *= BigInt::from(n);
        }
        if let Some(a) = b.terms.get(&n) {
            scaled.push((n, a / &ExactRational::from_integer(fact.clone())));
        }
    }
    let den = scaled
        .iter()
        .fold(BigInt::one(), |l, (_, r)| l.lcm(r.denom()));
    let mut nums = scaled
        .into_iter()
        .map(|(n, r)| (n, r.numer() * (&den / r.denom())))
        .peekable();
    let mut acc = vec![BigInt::zero(); deg as usize + 1];
    // falling factorial w(w-1)⋯(w-n+1), integer coefficients ascending
    let mut ff: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..=deg {
        if n > 0 {
            let shift = BigInt::from(n - 1);
            let mut next = vec![BigInt::zero(); ff.len() + 1];
            for (i, c) in ff.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            ff = next;
        }
        if let Some((_, num)) = nums.next_if(|(m, _)| *m == n) {
            for (slot, c) in acc.iter_mut().zip(&ff) {
                *slot += &num * c;
            }
        }
    }
    LaurentPoly::from_terms(
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                (
                    e as i64,
                    ExactRational::new(c, den.clone()).expect("nonzero"),
                )
            }),
    )
}

/// Product in the binomial basis through the integer structure constants
/// `c_m c_n = Σ_{k=max(m,n)}^{m+n} binom(k, m) binom(m, k-n) c_k`.
pub fn binom_product(a: &BinomialPoly, b: &BinomialPoly) -> BinomialPoly {
    if a.is_zero() || b.is_zero() {
        return BinomialPoly::zero();
    }
    let top = (a.degree().unwrap() + b.degree().unwrap()) as usize;
    let pas = pascal(top);
    let (ia, da) = integer_form(a);
    let (ib, db) = integer_form(b);
    let mut acc = vec![BigInt::zero(); top + 1];
    for (m, x) in &ia {
        for (n, y) in &ib {
            let (m, n) = (*m as usize, *n as usize);
            let xy = x * y;
            for k in m.max(n)..=m + n {
                acc[k] += &xy * &pas[k][m] * &pas[m][k - n];
            }
        }
    }
    let den = da * db;
    BinomialPoly::from_terms(
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                (
                    k as u64,
                    ExactRational::new(c, den.clone()).expect("nonzero"),
                )
            }),
    )
}

/// Integer numerators over a common denominator.
fn integer_form(b: &BinomialPoly) -> (Vec<(u64, BigInt)>, BigInt) {
    let den = b.terms.values().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let nums = b
        .terms
        .iter()
        .map(|(n, c)| (*n, c.numer() * (&den / c.denom())))
        .collect();
    (nums, den)
}
