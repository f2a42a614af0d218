//! Smith normal form over `Z` and over `Z/p^k`, with recorded transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Zpk;

/// `left · M · right = diag(diagonal)` (rectangular), with unimodular
/// transforms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnfResult<T> {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<T>,
    pub left: Vec<Vec<T>>,
    pub right: Vec<Vec<T>>,
}

fn identity<T: Clone>(n: usize, zero: T, one: T) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect()
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form over the integers; diagonal entries are non-negative
/// and each divides the next.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SnfResult<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut left = identity(rows, BigInt::zero(), BigInt::one());
    let mut right = identity(cols, BigInt::zero(), BigInt::one());
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_int(rows, cols, diagonal, left, right);
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                for j in 0..rows {
                    let d = &q * &left[t][j];
                    left[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                for i in 0..cols {
                    let d = &q * &right[i][t];
                    right[i][j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            if let Some(i) = bad {
                for j in 0..cols {
                    let x = a[i][j].clone();
                    a[t][j] += x;
                }
                for j in 0..rows {
                    let x = left[i][j].clone();
                    left[t][j] += x;
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(a[t][t].clone());
    }
    finish_int(rows, cols, diagonal, left, right)
}

fn finish_int(
    rows: usize,
    cols: usize,
    mut diagonal: Vec<BigInt>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
) -> SnfResult<BigInt> {
    diagonal.resize(rows.min(cols), BigInt::zero());
    SnfResult {
        rows,
        cols,
        diagonal,
        left,
        right,
    }
}

impl SnfResult<BigInt> {
    /// Re-multiplies the transforms and checks the divisibility chain.
    pub fn verify(&self, m: &[Vec<BigInt>]) -> bool {
        let prod = int_mul(&int_mul(&self.left, m, self.cols), &self.right, self.cols);
        let diag_ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let want = if i == j {
                    self.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                prod[i][j] == want
            })
        });
        let chain_ok = self.diagonal.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        diag_ok && chain_ok
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], bcols: usize) -> Vec<Vec<BigInt>> {
    let bcols = b.first().map_or(bcols, Vec::len);
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Smith normal form over `Z/p^k`; diagonal entries are `p^e` with `e`
/// non-decreasing (`0` stands for `p^k`).
pub fn smith_normal_form_mod(m: &[Vec<u64>], z: &Zpk) -> SnfResult<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x % z.modulus).collect())
        .collect();
    let mut left = identity(rows, 0, 1 % z.modulus);
    let mut right = identity(cols, 0, 1 % z.modulus);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = z.valuation(x);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, e)) = best else {
            break;
        };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        let pe = z.p.pow(e);
        let unit = z.inv(a[t][t] / pe).expect("unit part");
        for x in a[t].iter_mut() {
            *x = z.mul(*x, unit);
        }
        for x in left[t].iter_mut() {
            *x = z.mul(*x, unit);
        }
        for i in t + 1..rows {
            if a[i][t] == 0 {
                continue;
            }
            let q = a[i][t] / pe;
            for j in 0..cols {
                a[i][j] = z.sub(a[i][j], z.mul(q, a[t][j]));
            }
            for j in 0..rows {
                left[i][j] = z.sub(left[i][j], z.mul(q, left[t][j]));
            }
        }
        for j in t + 1..cols {
            if a[t][j] == 0 {
                continue;
            }
            let q = a[t][j] / pe;
            for i in 0..rows {
                a[i][j] = z.sub(a[i][j], z.mul(q, a[i][t]));
            }
            for i in 0..cols {
                right[i][j] = z.sub(right[i][j], z.mul(q, right[i][t]));
            }
        }
        diagonal.push(a[t][t]);
    }
    diagonal.resize(rows.min(cols), 0);
    SnfResult {
        rows,
        cols,
        diagonal,
        left,
        right,
    }
}

impl SnfResult<u64> {
    pub fn verify_mod(&self, m: &[Vec<u64>], z: &Zpk) -> bool {
        let mul = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
            let bcols = b.first().map_or(0, Vec::len);
            a.iter()
                .map(|row| {
                    (0..bcols)
                        .map(|j| {
                            row.iter()
                                .zip(b)
                                .fold(0, |acc, (x, br)| z.add(acc, z.mul(*x, br[j] % z.modulus)))
                        })
                        .collect()
                })
                .collect()
        };
        let prod = mul(&mul(&self.left, m), &self.right);
        let diag_ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| prod[i][j] == if i == j { self.diagonal[i] } else { 0 })
        });
        let exps = self.exponents(z);
        diag_ok
            && exps.windows(2).all(|w| w[0] <= w[1])
            && self
                .diagonal
                .iter()
                .zip(&exps)
                .all(|(d, e)| *e == z.k || *d == z.p.pow(*e))
    }

    /// Diagonal entries as exponents `e` with entry `p^e` (`k` for zero).
    pub fn exponents(&self, z: &Zpk) -> Vec<u32> {
        self.diagonal.iter().map(|d| z.valuation(*d)).collect()
    }

    /// Kernel of the matrix as a sum of cyclic groups `Z/p^e`.
    pub fn kernel_exponents(&self, z: &Zpk) -> Vec<u32> {
        let exps = self.exponents(z);
        (0..self.cols)
            .map(|j| exps.get(j).copied().unwrap_or(z.k))
            .filter(|e| *e > 0)
            .collect()
    }

    /// Cokernel of the matrix as a sum of cyclic groups `Z/p^e`.
    pub fn cokernel_exponents(&self, z: &Zpk) -> Vec<u32> {
        let exps = self.exponents(z);
        (0..self.rows)
            .map(|i| exps.get(i).copied().unwrap_or(z.k))
            .filter(|e| *e > 0)
            .collect()
    }
}
