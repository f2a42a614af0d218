use serde::{Deserialize, Serialize};

use super::{check_prime, Zpk};
use crate::error::{Error, Result};

/// A residue modulo `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicResidue {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub value: u64,
}

impl PadicResidue {
    pub fn new(p: u64, precision: u32, value: i64) -> Result<Self> {
        let ring = Zpk::new(p, precision)?;
        Ok(PadicResidue {
            p,
            precision,
            value: ring.from_i64(value),
        })
    }

    pub fn ring(&self) -> Zpk {
        Zpk::new(self.p, self.precision).expect("constructed from a valid ring")
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.p)
    }

    fn same_ring(&self, other: &Self) -> Result<Zpk> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::Domain(format!(
                "residues live in different rings: {}^{} vs {}^{}",
                self.p, self.precision, other.p, other.precision
            )));
        }
        Ok(self.ring())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let z = self.same_ring(other)?;
        Ok(PadicResidue {
            value: z.add(self.value, other.value),
            ..*self
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let z = self.same_ring(other)?;
        Ok(PadicResidue {
            value: z.mul(self.value, other.value),
            ..*self
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        PadicResidue {
            value: self.ring().pow(self.value, e),
            ..*self
        }
    }

    /// Inverse when the residue is a unit.
    pub fn inverse(&self) -> Option<Self> {
        self.ring()
            .inv(self.value)
            .map(|value| PadicResidue { value, ..*self })
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, precision: u32) -> Result<Self> {
        let z = self.ring().reduce_to(precision)?;
        Ok(PadicResidue {
            p: self.p,
            precision,
            value: self.value % z.modulus,
        })
    }

    /// Multiplicative order of a unit modulo `p`.
    pub fn order_mod_p(&self) -> Option<u64> {
        let a = self.value % self.p;
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = x * a % self.p;
            n += 1;
        }
        Some(n)
    }
}

/// Smallest generator of `(Z/p)^x`.
pub fn primitive_root(p: u64) -> Result<u64> {
    check_prime(p)?;
    if p == 2 {
        return Ok(1);
    }
    let phi = p - 1;
    let factors = super::prime_factors(&phi.into());
    (2..p)
        .find(|&g| factors.iter().all(|&q| super::powmod(g, phi / q, p) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {p}")))
}

/// The Teichmüller lift of the smallest primitive root mod `p`, to precision
/// `p^precision`. For `p = 2` this is 1.
pub fn teichmuller(p: u64, precision: u32) -> Result<PadicResidue> {
    let ring = Zpk::new(p, precision)?;
    if p == 2 {
        return Ok(PadicResidue {
            p,
            precision,
            value: 1 % ring.modulus,
        });
    }
    // Newton iteration on x^(p-1) - 1; each step at least doubles the
    // number of correct digits.
    let mut x = primitive_root(p)?;
    let mut correct = 1u32;
    while correct < precision {
        let fx = ring.sub(ring.pow(x, p - 1), 1);
        let dfx = ring.mul(ring.from_i64(p as i64 - 1), ring.pow(x, p - 2));
        let inv = ring
            .inv(dfx)
            .ok_or_else(|| Error::Internal("derivative of x^(p-1)-1 not a unit".into()))?;
        x = ring.sub(x, ring.mul(fx, inv));
        correct *= 2;
    }
    Ok(PadicResidue {
        p,
        precision,
        value: x,
    })
}
