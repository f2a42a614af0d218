//! Locally constant functions `Z_p → Z/p^k`, stored as value tables on
//! `Z/p^M`. For the 2-adic algebra the coordinate is `t` with `x = 1 + 8t`.

use serde::Serialize;

use crate::arith::{checked_pow, Zpk};
use crate::error::{Error, Result};

/// Tables larger than this are refused.
pub const MAX_TABLE: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LocallyConstantFn {
    pub prime: u64,
    pub value_precision: u32,
    pub domain_modulus: u32,
    table: Vec<u64>,
}

impl LocallyConstantFn {
    /// `table[t]` is the value on the coset `t + p^M Z_p`.
    pub fn new(
        prime: u64,
        value_precision: u32,
        domain_modulus: u32,
        table: Vec<u64>,
    ) -> Result<Self> {
        let z = Zpk::new(prime, value_precision)?;
        let len = table_len(prime, domain_modulus)?;
        if table.len() as u64 != len {
            return Err(Error::Shape(format!(
                "table of length {} for modulus {prime}^{domain_modulus}",
                table.len()
            )));
        }
        Ok(LocallyConstantFn {
            prime,
            value_precision,
            domain_modulus,
            table: table.into_iter().map(|x| x % z.modulus).collect(),
        })
    }

    pub fn from_fn(
        prime: u64,
        value_precision: u32,
        domain_modulus: u32,
        f: impl Fn(u64) -> u64,
    ) -> Result<Self> {
        let len = table_len(prime, domain_modulus)?;
        LocallyConstantFn::new(
            prime,
            value_precision,
            domain_modulus,
            (0..len).map(f).collect(),
        )
    }

    pub fn constant(prime: u64, value_precision: u32, c: u64) -> Result<Self> {
        LocallyConstantFn::new(prime, value_precision, 0, vec![c])
    }

    pub fn ring(&self) -> Zpk {
        Zpk::new(self.prime, self.value_precision).expect("validated on construction")
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    /// Value at the coordinate `t` (only `t mod p^M` matters).
    pub fn eval(&self, t: u64) -> u64 {
        self.table[(t % self.table.len() as u64) as usize]
    }

    /// The same function on the finer modulus `p^m`, `m ≥ M`.
    pub fn refine(&self, m: u32) -> Result<Self> {
        if m < self.domain_modulus {
            return Err(Error::Precision(format!(
                "cannot coarsen modulus {} to {m}",
                self.domain_modulus
            )));
        }
        LocallyConstantFn::from_fn(self.prime, self.value_precision, m, |t| self.eval(t))
    }

    fn zip(&self, other: &Self, op: impl Fn(&Zpk, u64, u64) -> u64) -> Result<Self> {
        if self.prime != other.prime || self.value_precision != other.value_precision {
            return Err(Error::Shape("functions with different value rings".into()));
        }
        let z = self.ring();
        if self.domain_modulus == other.domain_modulus {
            let table = self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| op(&z, *a, *b))
                .collect();
            return Ok(LocallyConstantFn {
                prime: self.prime,
                value_precision: self.value_precision,
                domain_modulus: self.domain_modulus,
                table,
            });
        }
        let m = self.domain_modulus.max(other.domain_modulus);
        LocallyConstantFn::from_fn(self.prime, self.value_precision, m, |t| {
            op(&z, self.eval(t), other.eval(t))
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, Zpk::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, Zpk::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, Zpk::mul)
    }

    pub fn pow(&self, e: u64) -> Self {
        let z = self.ring();
        LocallyConstantFn {
            prime: self.prime,
            value_precision: self.value_precision,
            domain_modulus: self.domain_modulus,
            table: self.table.iter().map(|x| z.pow(*x, e)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|x| *x == 0)
    }

    /// Largest `n ≤ k` with every value divisible by `p^n`.
    pub fn congruence_exponent(&self) -> u32 {
        let z = self.ring();
        self.table
            .iter()
            .map(|x| z.valuation(*x))
            .min()
            .unwrap_or(self.value_precision)
    }

    /// First coordinate whose value has the minimal valuation.
    pub fn worst_point(&self) -> Option<u64> {
        let z = self.ring();
        let e = self.congruence_exponent();
        self.table
            .iter()
            .position(|x| z.valuation(*x) == e)
            .map(|t| t as u64)
    }

    /// Values reduced to `Z/p^{k'}`.
    pub fn reduce_precision(&self, k: u32) -> Result<Self> {
        let z = self.ring().reduce_to(k)?;
        Ok(LocallyConstantFn {
            value_precision: k,
            table: self.table.iter().map(|x| x % z.modulus).collect(),
            ..self.clone()
        })
    }
}

fn table_len(prime: u64, m: u32) -> Result<u64> {
    let len = checked_pow(prime, m)?;
    if len > MAX_TABLE {
        return Err(Error::Precision(format!(
            "a table of {prime}^{m} entries exceeds the limit {MAX_TABLE}"
        )));
    }
    Ok(len)
}

/// `binom(u, n) mod p^k` for every `u` in `[0, p^M)`, by sweeping Pascal's
/// rule along `u`. The result is locally constant with modulus `p^M` as soon
/// as `M ≥ k + floor(log_p n)`.
pub fn binomial_table(p: u64, k: u32, m: u32, n: u64) -> Result<LocallyConstantFn> {
    let z = Zpk::new(p, k)?;
    let len = table_len(p, m)?;
    let n = n as usize;
    let mut row = vec![0u64; n + 1];
    row[0] = 1 % z.modulus;
    let mut table = Vec::with_capacity(len as usize);
    for _ in 0..len {
        table.push(row[n]);
        // row[j] += row[j-1], left to right while carrying the old value
        let mut prev = row[0];
        for x in &mut row[1..] {
            let s = *x as u128 + prev as u128;
            prev = *x;
            *x = if s >= z.modulus as u128 {
                s - z.modulus as u128
            } else {
                s
            } as u64;
        }
    }
    LocallyConstantFn::new(p, k, m, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_ring_operations() {
        let a = LocallyConstantFn::new(2, 3, 1, vec![1, 3]).unwrap();
        let b = LocallyConstantFn::new(2, 3, 2, vec![2, 2, 5, 7]).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.domain_modulus, 2);
        assert_eq!(s.table(), &[3, 5, 6, 2]);
        let m = a.mul(&b).unwrap();
        assert_eq!(m.table(), &[2, 6, 5, 5]);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn binomial_tables_are_periodic() {
        // binom(u + 3^3, 3) ≡ binom(u, 3) mod 3^2
        let t = binomial_table(3, 2, 4, 3).unwrap();
        for u in 0..27u64 {
            assert_eq!(t.eval(u), t.eval(u + 27));
        }
        for u in 0..81u64 {
            let direct = u * u.saturating_sub(1) * u.saturating_sub(2) / 6;
            assert_eq!(t.eval(u), direct % 9);
        }
    }

    #[test]
    fn congruence_exponent_reads_valuations() {
        let f = LocallyConstantFn::new(3, 3, 1, vec![0, 9, 18]).unwrap();
        assert_eq!(f.congruence_exponent(), 2);
        assert_eq!(f.worst_point(), Some(1));
        assert!(LocallyConstantFn::new(3, 2, 1, vec![0, 1]).is_err());
    }
}
