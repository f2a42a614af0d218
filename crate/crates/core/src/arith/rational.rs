//! Arbitrary-precision rationals, always kept in lowest terms.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number. The denominator is always positive and coprime
/// to the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactRational(r)
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let r = self.recip()?;
            return r.pow(-e);
        }
        Ok(ExactRational(num_traits::pow(self.0.clone(), e as usize)))
    }

    /// Integer part when the value is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// Multiplies by `p^e` for a possibly negative exponent.
    pub fn mul_pow(&self, p: u64, e: i64) -> Self {
        let pe = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
        if e >= 0 {
            ExactRational(&self.0 * BigRational::from_integer(pe))
        } else {
            ExactRational(&self.0 / BigRational::from_integer(pe))
        }
    }

    /// Residue of a `p`-integral rational modulo `modulus` (a power of `p`).
    /// Returns `None` when the denominator is not invertible.
    pub fn residue_mod(&self, modulus: u64) -> Option<u64> {
        let m = BigInt::from(modulus);
        let num = self.0.numer().mod_floor(&m);
        let den = self.0.denom().mod_floor(&m);
        let den = u64::try_from(den).ok()?;
        let inv = super::modinv_u64(den, modulus)?;
        let num = u64::try_from(num).ok()?;
        Some(super::mulmod(num, inv, modulus))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            offset: 0,
            message: format!("invalid rational {s:?}"),
        };
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                ExactRational::new(n, d)
            }
            None => Ok(ExactRational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $assign_trait for ExactRational {
            fn $assign(&mut self, rhs: ExactRational) {
                self.0.$assign(rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a ExactRational> for ExactRational {
            fn $assign(&mut self, rhs: &'a ExactRational) {
                self.0.$assign(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for ExactRational {
    type Output = ExactRational;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: ExactRational) -> ExactRational {
        ExactRational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: &'a ExactRational) -> ExactRational {
        ExactRational(&self.0 / &rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::one(), |a, b| a * b)
    }
}
