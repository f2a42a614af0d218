use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::ExactRational;
use crate::error::{Error, Result};

/// A Laurent polynomial in `w` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, ExactRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// The variable `w`.
    pub fn w() -> Self {
        LaurentPoly::monomial(ExactRational::one(), 1)
    }

    pub fn monomial(c: ExactRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, ExactRational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// From integer coefficients in ascending exponent starting at `w^0`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i64, ExactRational::from_integer(*c))),
        )
    }

    fn add_term(&mut self, e: i64, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, ExactRational> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> ExactRational {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent (the order of vanishing at `w = 0`); `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// True when no negative exponents occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub(crate) fn require_polynomial(&self, what: &str) -> Result<()> {
        if self.is_polynomial() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} needs a polynomial, found the exponent {}",
                self.min_exponent().unwrap()
            )))
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `w^k`.
    pub fn shift_exponents(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common denominator `D` and the integer coefficients of `D·f`.
    pub fn integer_form(&self) -> (BTreeMap<i64, BigInt>, BigInt) {
        let d = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&d / c.denom())))
            .collect();
        (ints, d)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &ExactRational) -> Result<ExactRational> {
        if x.is_zero() && !self.is_polynomial() {
            return Err(Error::Domain("negative power of w evaluated at 0".into()));
        }
        let mut acc = ExactRational::zero();
        for (e, c) in &self.terms {
            acc += c * &x.pow(*e)?;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, x: i64) -> Result<ExactRational> {
        self.eval(&ExactRational::from_integer(x))
    }

    /// `f(a + b·w)` for a polynomial `f`.
    pub fn compose_affine(&self, a: &ExactRational, b: &ExactRational) -> Result<Self> {
        self.require_polynomial("affine substitution")?;
        let lin = LaurentPoly::from_terms([(0, a.clone()), (1, b.clone())]);
        let mut acc = LaurentPoly::zero();
        let deg = self.degree().unwrap_or(0);
        // Horner in descending exponent order
        for e in (0..=deg).rev() {
            acc = &acc * &lin;
            acc.add_term(0, self.coeff(e));
        }
        Ok(acc)
    }

    /// `f(c·w)`; defined for Laurent polynomials when `c` is nonzero.
    pub fn scale_variable(&self, c: &ExactRational) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x * &c.pow(*e)?);
        }
        Ok(out)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e - 1, c * &ExactRational::from_integer(*e))),
        )
    }
}

fn mul_ref(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    // integer numerators, one division at the end
    let (ia, da) = a.integer_form();
    let (ib, db) = b.integer_form();
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (ea, ca) in &ia {
        for (eb, cb) in &ib {
            *acc.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    let d = da * db;
    LaurentPoly::from_terms(
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, ExactRational::new(c, d.clone()).expect("nonzero"))),
    )
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        mul_ref(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        mul_ref(&self, &rhs)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

/// Canonical expression form, descending exponents, e.g. `1/3*w^2 - 1/3`.
/// The output parses back to the same polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match *e {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if *e == 1 {
                        f.write_str("w")?;
                    } else if *e < 0 {
                        write!(f, "w^({e})")?;
                    } else {
                        write!(f, "w^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
