//! Dense univariate polynomials over a prime field `F_p`.

use super::{modinv_u64, mulmod};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// `c * x^e`.
    pub fn monomial(p: u64, c: u64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        FpPoly::new(p, v)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Nonzero constant times a power of x.
    pub fn as_monomial(&self) -> Option<(u64, usize)> {
        let nz: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect();
        match nz.as_slice() {
            [i] => Some((self.coeffs[*i], *i)),
            _ => None,
        }
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|c| (self.p - c) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|a| mulmod(*a, c, self.p)).collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(*a, *b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = modinv_u64(d.lead(), self.p).expect("nonzero lead in a field");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mulmod(r[i], inv, self.p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, b) in d.coeffs.iter().enumerate() {
                let t = mulmod(c, *b, self.p);
                r[i - dd + j] = (r[i - dd + j] + self.p - t) % self.p;
            }
        }
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &FpPoly) -> Option<FpPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic (or zero).
    pub fn ext_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::constant(p, 1), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::constant(p, 1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = modinv_u64(r0.lead(), p).expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }
}

/// Determinant by fraction-free (Bareiss) elimination over `F_p[v]`.
pub(crate) fn bareiss_det(mut m: Vec<Vec<FpPoly>>, p: u64) -> FpPoly {
    let n = m.len();
    if n == 0 {
        return FpPoly::constant(p, 1);
    }
    let mut sign_neg = false;
    let mut prev = FpPoly::constant(p, 1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return FpPoly::zero(p),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            m[i][k] = FpPoly::zero(p);
        }
        prev = m[k][k].clone();
    }
    if sign_neg {
        prev.neg()
    } else {
        prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_inverse() {
        // x^3 - x = x(x-1)(x+1) over F_3, and 2 is a unit
        let f = FpPoly::new(3, vec![0, 2, 0, 1]);
        let g = FpPoly::new(3, vec![2]);
        let (d, s, _) = FpPoly::ext_gcd(&g, &f);
        assert_eq!(d, FpPoly::constant(3, 1));
        assert_eq!(s.mul(&g).div_rem(&f).1, FpPoly::constant(3, 1));
        let x = FpPoly::new(3, vec![0, 1]);
        let (d, _, _) = FpPoly::ext_gcd(&x, &f);
        assert_eq!(d, x);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let c = |v: u64| FpPoly::constant(7, v);
        let m = vec![
            vec![c(2), c(3), c(1)],
            vec![c(4), c(0), c(5)],
            vec![c(1), c(6), c(2)],
        ];
        // 2(0-30) - 3(8-5) + (24-0) = -60 - 9 + 24 = -45 = 4 mod 7
        assert_eq!(bareiss_det(m, 7), c(4));
        let v = FpPoly::new(5, vec![0, 1]);
        let one = FpPoly::constant(5, 1);
        let m = vec![vec![v.clone(), one.clone()], vec![one.clone(), v.clone()]];
        assert_eq!(bareiss_det(m, 5), FpPoly::new(5, vec![4, 0, 1]));
    }
}
