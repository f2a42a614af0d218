#![allow(dead_code)]

use num_bigint::BigInt;
use numpoly::arith::{FpPoly, Mono};
use numpoly::etale::{BaseRing, FinitePresentation, MPoly};
use numpoly::numpoly::{c, parse_poly, BinomialPoly, LaurentPoly};
use numpoly::ExactRational;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d).unwrap()
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// Polynomials of degree ≤ 8 with coefficient denominators ≤ 5000, mixing
/// arbitrary monomial coefficients with binomial combinations over a common
/// divisor (so that members and non-members both occur often).
pub fn poly_deg8() -> impl Strategy<Value = LaurentPoly> {
    let monomial = prop::collection::vec((-50i64..=50, 1i64..=5000), 1..=9).prop_map(|cs| {
        LaurentPoly::from_terms(
            cs.into_iter()
                .enumerate()
                .map(|(e, (n, d))| (e as i64, q(n, d))),
        )
    });
    // with `all` set every coordinate is an integer, so the result is a member
    let binomial = (
        prop::collection::vec((-30i64..=30, any::<bool>()), 1..=9),
        1i64..=5000,
        any::<bool>(),
    )
        .prop_map(|(cs, d, all)| {
            let b =
                BinomialPoly::from_terms(cs.into_iter().enumerate().map(|(n, (r, scaled))| {
                    (n as u64, q(if scaled || all { r * d } else { r }, d))
                }));
            numpoly::numpoly::to_monomial(&b)
        });
    prop_oneof![monomial, binomial]
}

/// Arbitrary Laurent polynomials with exponents in `[-4, 6]`.
pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=6, -40i64..=40, 1i64..=60), 0..=6)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, q(n, d)))))
}

/// Integer binomial combinations: elements of `A`.
pub fn member_a() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-9i64..=9, 1..=6).prop_map(|cs| {
        numpoly::numpoly::to_monomial(&BinomialPoly::from_terms(
            cs.into_iter()
                .enumerate()
                .map(|(n, r)| (n as u64, ExactRational::from_integer(r))),
        ))
    })
}

/// Binomial combinations with denominators prime to `p`: elements of `A_(p)`.
pub fn member_ap(p: u64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-9i64..=9, 1i64..=12), 1..=6).prop_map(move |cs| {
        numpoly::numpoly::to_monomial(&BinomialPoly::from_terms(cs.into_iter().enumerate().map(
            |(n, (r, mut d))| {
                while d % p as i64 == 0 {
                    d /= p as i64;
                }
                (n as u64, q(r, d))
            },
        )))
    })
}

/// `w^{-j}` times elements of `A_(p)`, plus a multiple of `(w^{p-1} - 1)/p`:
/// elements of `A^st_(p)`.
pub fn member_astp(p: u64) -> impl Strategy<Value = LaurentPoly> {
    (member_ap(p), 0i64..=3, -3i64..=3).prop_map(move |(f, j, r)| {
        let e1 = LaurentPoly::from_terms([(p as i64 - 1, q(1, p as i64)), (0, q(-1, p as i64))]);
        f.shift_exponents(-j) + e1.scale(&ExactRational::from_integer(r))
    })
}

/// Direct evaluation: `f(n)` for a polynomial `f` at an integer.
pub fn eval(f: &LaurentPoly, n: i64) -> ExactRational {
    f.eval_int(n).unwrap()
}

pub fn is_p_integral(x: &ExactRational, p: u64) -> bool {
    x.denom() % BigInt::from(p) != BigInt::from(0)
}

/// Textbook test for `A`: integer values at `0, …, deg f`.
pub fn oracle_numerical(f: &LaurentPoly) -> bool {
    let d = f.degree().unwrap_or(0);
    (0..=d).all(|n| eval(f, n).is_integer())
}

/// The same test p-locally.
pub fn oracle_p_local(f: &LaurentPoly, p: u64) -> bool {
    let d = f.degree().unwrap_or(0);
    (0..=d).all(|n| is_p_integral(&eval(f, n), p))
}

/// `A^st_(p)` by brute force: `f` has denominator `p^a` at most, so the
/// p-integrality of `f(u)` depends on `u mod p^a` only; evaluate at every
/// unit residue, exactly.
pub fn oracle_stably_p_local(f: &LaurentPoly, p: u64) -> bool {
    let a = f
        .terms()
        .values()
        .map(|c| {
            let mut d = c.denom().clone();
            let mut e = 0u32;
            while &d % p == BigInt::from(0) {
                d /= p;
                e += 1;
            }
            e
        })
        .max()
        .unwrap_or(0);
    let m = p.pow(a).max(p);
    (1..m as i64)
        .filter(|u| u % p as i64 != 0)
        .all(|u| is_p_integral(&eval(f, u), p))
}

pub fn binom_int(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

pub fn c_mono(n: u64) -> LaurentPoly {
    c(n).1
}

pub fn mono(g: usize, i: usize, e: u32) -> Mono {
    let mut exps = vec![0; g];
    exps[i] = e;
    Mono { v: 0, exps }
}

/// A separated presentation: generator `i` carries the monic relation
/// `x_i^{d_i} + Σ lower[j] x_i^j`.
pub fn separated(p: u64, k: u32, lowers: &[Vec<u64>]) -> FinitePresentation {
    let g = lowers.len();
    let rels: Vec<MPoly> = lowers
        .iter()
        .enumerate()
        .map(|(i, lower)| {
            let mut rel: MPoly = lower
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(e, c)| (mono(g, i, e as u32), ExactRational::from_integer(*c as i64)))
                .collect();
            rel.insert(mono(g, i, lower.len() as u32), ExactRational::one());
            rel
        })
        .collect();
    let gens = (0..g).map(|i| format!("x{i}")).collect();
    FinitePresentation::new(BaseRing::Zpk { p, k }, false, gens, rels).unwrap()
}

/// Separability of the reduction mod p: `gcd(f, f') = 1` in `F_p[x]`.
pub fn separable_mod_p(p: u64, lower: &[u64]) -> bool {
    let mut f: Vec<u64> = lower.iter().map(|c| c % p).collect();
    f.push(1);
    let df: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| (e as u64 % p) * c % p)
        .collect();
    let (gcd, _, _) = FpPoly::ext_gcd(&FpPoly::new(p, f), &FpPoly::new(p, df));
    gcd.degree() == Some(0)
}

pub fn presentation_case() -> impl Strategy<Value = (u64, u32, Vec<Vec<u64>>)> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        1u32..=3,
        1usize..=2,
    )
        .prop_flat_map(|(p, k, g)| {
            let m = p.pow(k);
            (
                Just(p),
                Just(k),
                prop::collection::vec(
                    (1usize..=3).prop_flat_map(move |d| prop::collection::vec(0..m, d)),
                    g,
                ),
            )
        })
}

/// `Σ a_j x^j w^{2 e_j}` with `x = (w²-1)/8`: accepted by construction.
pub fn ko_element() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, 0u32..=2, -2i64..=2), 1..=4).prop_map(|terms| {
        let x = parse_poly("(w^2-1)/8").unwrap();
        terms
            .into_iter()
            .map(|(a, j, e)| {
                LaurentPoly::monomial(ExactRational::from_integer(a), 2 * e) * x.pow(j)
            })
            .fold(LaurentPoly::zero(), |acc, t| acc + t)
    })
}
