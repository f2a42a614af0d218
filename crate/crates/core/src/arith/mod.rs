//! Exact integer, rational and modular arithmetic.

mod fp_poly;
mod padic;
mod quotient;
mod rational;

pub use fp_poly::FpPoly;
pub use padic::{primitive_root, teichmuller, PadicResidue};
pub use quotient::{invert_in_quotient, LaurentV, Mono, QElem, QuotientRing, UnitVerdict};
pub use rational::ExactRational;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A p-adic valuation: a finite integer, or `+inf` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_p_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation of a rational; `+inf` exactly for zero.
pub fn ord_p(q: &ExactRational, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    Ok(ord_p_unchecked(q, p))
}

pub(crate) fn ord_p_unchecked(q: &ExactRational, p: u64) -> Valuation {
    match ord_p_int(q.numer(), p) {
        Valuation::Infinite => Valuation::Infinite,
        Valuation::Finite(a) => {
            let b = ord_p_int(q.denom(), p).finite().unwrap_or(0);
            Valuation::Finite(a - b)
        }
    }
}

/// Primes dividing a positive integer, ascending.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::from(1) {
        match u64::try_from(&n) {
            Ok(v) => out.push(v),
            // Only reachable for denominators with a prime factor above 2^64.
            Err(_) => out.push(u64::MAX),
        }
    }
    out
}

/// `p^e` when it fits in 62 bits.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc
            .checked_mul(p)
            .filter(|v| *v <= 1 << 62)
            .ok_or_else(|| Error::Precision(format!("{p}^{e} exceeds 2^62")))?;
    }
    Ok(acc)
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        // the product fits in 64 bits; avoids 128-bit division
        return (a % m) * (b % m) % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn modinv_u64(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// The residue ring `Z/p^k`, with `p^k < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zpk {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
}

impl Zpk {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::Domain("precision must be at least 1".into()));
        }
        Ok(Zpk {
            p,
            k,
            modulus: checked_pow(p, k)?,
        })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.modulus <= u32::MAX as u64 {
            return (a % self.modulus + b % self.modulus) % self.modulus;
        }
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.modulus - b % self.modulus)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.modulus)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.modulus)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        modinv_u64(a, self.modulus)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.modulus));
        u64::try_from(r).expect("residue fits")
    }

    /// Residue of a p-integral rational.
    pub fn from_rational(&self, q: &ExactRational) -> Result<u64> {
        q.residue_mod(self.modulus)
            .ok_or_else(|| Error::Domain(format!("{q} is not {}-integral", self.p)))
    }

    /// The symmetric representative in `(-m/2, m/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }

    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.modulus;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn reduce_to(&self, k: u32) -> Result<Zpk> {
        if k > self.k {
            return Err(Error::Precision(format!(
                "cannot raise precision from {} to {k}",
                self.k
            )));
        }
        Zpk::new(self.p, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn ord_p_examples() {
        assert_eq!(ord_p(&q(0, 1), 3).unwrap(), Valuation::Infinite);
        assert_eq!(ord_p(&q(9, 2), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(ord_p(&q(-1, 3), 3).unwrap(), Valuation::Finite(-1));
        assert_eq!(ord_p(&q(1, 3), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|n| is_prime(*n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(prime_factors(&BigInt::from(4999)), vec![4999]);
    }

    #[test]
    fn zpk_basics() {
        let z = Zpk::new(3, 2).unwrap();
        assert_eq!(z.modulus, 9);
        assert_eq!(z.inv(2), Some(5));
        assert_eq!(z.inv(3), None);
        assert_eq!(z.from_i64(-1), 8);
        assert_eq!(z.valuation(3), 1);
        assert_eq!(z.valuation(0), 2);
        assert!(Zpk::new(2, 70).is_err());
        assert!(Zpk::new(6, 1).is_err());
    }

    #[test]
    fn valuation_order() {
        assert!(Valuation::Finite(100) < Valuation::Infinite);
        assert!(Valuation::Finite(-1) < Valuation::Finite(0));
    }
}
