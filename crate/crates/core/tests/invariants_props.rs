mod common;

use common::*;
use numpoly::invariants::{
    etale_over_invariants_check, etale_over_invariants_control, is_invariant, numeric_action_check,
    project_invariant, ZetaAction,
};
use numpoly::numpoly::{e_family, is_stably_numerical, LaurentPoly};
use numpoly::ExactRational;
use proptest::prelude::*;

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

/// Laurent polynomials whose coefficients are p-integral, so the numeric
/// average is defined mod `p^N`.
fn integral_laurent(p: u64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..=12, -40i64..=40, 1i64..=30), 0..=8).prop_map(move |ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(e, n, mut d)| {
            while d % p as i64 == 0 {
                d /= p as i64;
            }
            (e, q(n, d))
        }))
    })
}

/// Polynomials in `w^{±(p-1)}` with random coefficients: invariants.
fn invariant_laurent(p: u64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -20i64..=20, 1i64..=20), 0..=4).prop_map(move |ts| {
        LaurentPoly::from_terms(
            ts.into_iter()
                .map(|(e, n, d)| (e * (p as i64 - 1), q(n, d))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent_and_linear(p in odd_prime(), f in laurent(), g in laurent(), a in -9i64..=9) {
        let pf = project_invariant(&f, p).unwrap();
        prop_assert_eq!(project_invariant(&pf, p).unwrap(), pf.clone());
        prop_assert!(is_invariant(&pf, p).unwrap());
        let a = ExactRational::from_integer(a);
        let lhs = project_invariant(&(f.scale(&a) + g.clone()), p).unwrap();
        prop_assert_eq!(lhs, pf.scale(&a) + project_invariant(&g, p).unwrap());
    }

    #[test]
    fn projection_formula((p, f, g) in odd_prime().prop_flat_map(|p| (Just(p), invariant_laurent(p), laurent()))) {
        prop_assert!(is_invariant(&f, p).unwrap());
        let lhs = project_invariant(&(f.clone() * g.clone()), p).unwrap();
        prop_assert_eq!(lhs, f * project_invariant(&g, p).unwrap());
    }

    /// The exact projection against `(1/(p-1)) Σ_r f(ζ^r w)` computed with
    /// the Teichmüller root, coefficient by coefficient.
    #[test]
    fn numeric_average_agrees((p, f) in odd_prime().prop_flat_map(|p| (Just(p), integral_laurent(p))), n in 1u32..=4) {
        let check = numeric_action_check(&f, p, n).unwrap();
        prop_assert!(check.agrees);
        // recompute the average directly from the action
        let action = ZetaAction::new(p, n).unwrap();
        let z = action.zeta.ring();
        let inv = z.inv(p - 1).unwrap();
        let proj = project_invariant(&f, p).unwrap();
        let mut sums = vec![0u64; f.terms().len()];
        for r in 0..p - 1 {
            for (slot, (_, c)) in sums.iter_mut().zip(action.apply(&f, r).unwrap()) {
                *slot = z.add(*slot, c);
            }
        }
        for ((e, _), s) in f.terms().iter().zip(sums) {
            prop_assert_eq!(z.mul(s, inv), z.from_rational(&proj.coeff(*e)).unwrap(), "exponent {}", e);
        }
    }

    /// The projection maps `A^st_(p)` into itself.
    #[test]
    fn projection_preserves_membership((p, f) in odd_prime().prop_flat_map(|p| (Just(p), member_astp(p)))) {
        prop_assert!(is_stably_numerical(&f, Some(p)).unwrap().member);
        let pf = project_invariant(&f, p).unwrap();
        prop_assert!(is_stably_numerical(&pf, Some(p)).unwrap().member, "{} leaves the ring", pf);
    }
}

#[test]
fn e_family_is_invariant() {
    for p in [3u64, 5, 7] {
        for (i, e) in e_family(p, 3).unwrap().iter().enumerate() {
            assert!(is_invariant(e, p).unwrap(), "e_{} at p={p}", i + 1);
            assert_eq!(&project_invariant(e, p).unwrap(), e);
            let shifted = LaurentPoly::monomial(ExactRational::one(), -1) * e.clone();
            assert!(!is_invariant(&shifted, p).unwrap());
        }
    }
}

#[test]
fn etale_over_invariants() {
    for p in [3u64, 5] {
        for k in 1..=3 {
            let c = etale_over_invariants_check(p, k).unwrap();
            assert!(c.etale && c.cross_checked, "p={p} k={k}: {c:?}");
            assert!(c.kahler.vanishes);
            let ctl = etale_over_invariants_control(p, k).unwrap();
            assert!(!ctl.etale, "control accepted at p={p} k={k}");
        }
    }
}
