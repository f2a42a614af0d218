//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Random samples come from a fixed-seed runner.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::One;
use numpoly::etale::{
    aq_low, en_presentation_check, hensel_tower_values, kahler_rank, ko_membership,
    truncation_presentation, truncation_tower, verify_xi_basis, BaseModule, BaseRing,
    FinitePresentation, ModuleDescriptor, StructureTable, FULL_TABLE_LIMIT,
};
use numpoly::invariants::{
    etale_over_invariants_check, etale_over_invariants_control, is_invariant, numeric_action_check,
    project_invariant,
};
use numpoly::numpoly::{
    binom_product, d_family, denominator_primes, e_family, in_p_local_binomial,
    is_p_local_numerical, is_stably_numerical, parse_poly, residue_sweep, to_binomial, to_monomial,
    verify_plocal_basis, BinomialPoly, LaurentPoly, LocalRing, Witness,
};
use numpoly::{ExactRational, Valuation};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

const LIMIT_ORACLE: Duration = Duration::from_secs(10);
const LIMIT_FAMILIES: Duration = Duration::from_secs(5);
const LIMIT_HENSEL_CASE: Duration = Duration::from_secs(2);

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce(&mut TestRunner) -> Check>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample<S: Strategy>(runner: &mut TestRunner, s: S, n: usize) -> Vec<S::Value> {
    (0..n)
        .map(|_| s.new_tree(runner).expect("strategy").current())
        .collect()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!(
            "{what} took {:.2} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        )
    })
}

fn binomial_poly() -> impl Strategy<Value = BinomialPoly> {
    prop::collection::vec((0u64..=10, -30i64..=30, 1i64..=40), 0..=6)
        .prop_map(|ts| BinomialPoly::from_terms(ts.into_iter().map(|(n, a, b)| (n, q(a, b)))))
}

fn criterion_1(runner: &mut TestRunner) -> Check {
    let polys = sample(runner, poly_deg8(), 500);
    let start = Instant::now();
    let mut members = 0;
    for f in &polys {
        let by_basis = to_binomial(f).map_err(|e| e.to_string())?.is_integral();
        let mut by_sweep = true;
        for p in denominator_primes(f) {
            let v = residue_sweep(f, p, LocalRing::Numerical).map_err(|e| e.to_string())?;
            by_sweep &= v.member;
        }
        ensure(by_basis == by_sweep, || format!("disagreement on {f}"))?;
        ensure(by_basis == oracle_numerical(f), || {
            format!("value oracle disagrees on {f}")
        })?;
        members += by_basis as usize;
    }
    within(start.elapsed(), LIMIT_ORACLE, "500 polynomials")?;
    Ok(format!(
        "500 polynomials, {members} members, 100% agreement"
    ))
}

fn criterion_2(runner: &mut TestRunner) -> Check {
    let pairs = sample(runner, (binomial_poly(), binomial_poly()), 200);
    for (a, b) in &pairs {
        let oracle = to_binomial(&(to_monomial(a) * to_monomial(b))).map_err(|e| e.to_string())?;
        ensure(binom_product(a, b) == oracle, || {
            format!("product law fails on {a:?}, {b:?}")
        })?;
    }
    let degrees = sample(runner, (0u64..=30, 0u64..=30), 200);
    for (m, n) in &degrees {
        let prod = binom_product(&BinomialPoly::basis(*m), &BinomialPoly::basis(*n));
        let want = ExactRational::from(binom_int(m + n, *m));
        ensure(
            prod.degree() == Some(m + n) && prod.coeff(m + n) == want,
            || format!("leading coefficient of c_{m} c_{n}"),
        )?;
    }
    Ok("200 product pairs, 200 leading coefficients".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let ds = d_family(p, 3).map_err(|e| e.to_string())?;
        let es = e_family(p, 3).map_err(|e| e.to_string())?;
        for (i, d) in ds.iter().enumerate() {
            let m = i as u32 + 1;
            if d.degree() != Some(p.pow(m)) {
                failures.push(format!("deg d_{m} at p={p}"));
            }
            let member = is_p_local_numerical(&to_monomial(d), p).map_err(|e| e.to_string())?;
            if !member.member || !in_p_local_binomial(d, p) {
                failures.push(format!("d_{m} not in A_({p})"));
            }
        }
        for (i, e) in es.iter().enumerate() {
            let m = i as u32 + 1;
            if e.degree() != Some(((p - 1) * p.pow(m - 1)) as i64) {
                failures.push(format!("deg e_{m} at p={p}"));
            }
            if !is_stably_numerical(e, Some(p))
                .map_err(|e| e.to_string())?
                .member
            {
                failures.push(format!("e_{m} not in A^st_({p})"));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    within(start.elapsed(), LIMIT_FAMILIES, "generator tables")?;
    Ok("p in {2,3,5,7}, m <= 3: 0 divisibility failures, degrees exact".into())
}

/// `D! / Π_k (p^k)!^{r_k}`: the leading binomial coefficient of the
/// monomial of degree `D`.
fn leading_coefficient(deg: u64, p: u64) -> BigInt {
    let fact = |n: u64| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let mut denom = BigInt::one();
    let (mut n, mut pk) = (deg, 1u64);
    while n > 0 {
        for _ in 0..n % p {
            denom *= fact(pk);
        }
        n /= p;
        pk *= p;
    }
    fact(deg) / denom
}

fn criterion_4() -> Check {
    let mut dets = Vec::new();
    for p in [2u64, 3, 5] {
        let bound = p * p;
        let r = verify_plocal_basis(p, bound).map_err(|e| e.to_string())?;
        let expected: BigInt = (0..=bound).map(|d| leading_coefficient(d, p)).product();
        ensure(r.det == ExactRational::from(expected), || {
            format!("det at p={p} differs from the product of leading coefficients")
        })?;
        ensure(r.ord_p_det == Valuation::Finite(0) && r.holds, || {
            format!("ord_{p}(det) = {:?}", r.ord_p_det)
        })?;
        dets.push(format!("p={p}: ord 0"));
    }
    Ok(dets.join(", "))
}

fn criterion_5() -> Check {
    let mut slowest = Duration::ZERO;
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for k in 1..=6 {
            for m in 0..=2 {
                let start = Instant::now();
                let r = hensel_tower_values(p, m, k).map_err(|e| e.to_string())?;
                let elapsed = start.elapsed();
                within(elapsed, LIMIT_HENSEL_CASE, &format!("p={p} k={k} m={m}"))?;
                slowest = slowest.max(elapsed);
                ensure(r.steps.len() as u32 == k - 1, || {
                    format!("step count at p={p} k={k}")
                })?;
                for s in &r.steps {
                    ensure(s.exponent_after >= (s.exponent_before + 1).min(k), || {
                        format!("step {} at p={p} k={k} m={m} gains nothing", s.step)
                    })?;
                }
                ensure(r.final_exponent >= k && r.holds, || {
                    format!("p={p} k={k} m={m} ends at exponent {}", r.final_exponent)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} cases, slowest {:.3} s",
        slowest.as_secs_f64()
    ))
}

fn x_to_the_p(p: u64, k: u32) -> Result<FinitePresentation, String> {
    let mut coeffs = vec![0i64; p as usize + 1];
    coeffs[p as usize] = 1;
    FinitePresentation::univariate(p, k, "x", &coeffs).map_err(|e| e.to_string())
}

fn criterion_6() -> Check {
    let mut partial = Vec::new();
    for p in [2u64, 3, 5] {
        for l in 0..=3 {
            let r = truncation_tower(p, 4, l).map_err(|e| e.to_string())?;
            ensure(r.holds && r.levels.iter().all(|lv| lv.etale), || {
                format!("tower fails at p={p} l={l}")
            })?;
            if p.pow(l + 1) as usize > FULL_TABLE_LIMIT {
                partial.push(format!("p={p} l={l}"));
            }
        }
    }
    let mut en = 0;
    for p in [2u64, 3] {
        for k in 1..=4 {
            for j in 1..=3 {
                let c = en_presentation_check(p, k, j).map_err(|e| e.to_string())?;
                ensure(c.etale && c.cross_checked, || {
                    format!("E_n fails at p={p} k={k} j={j}")
                })?;
                en += 1;
            }
        }
    }
    let mut controls = 0;
    for p in [2u64, 3, 5] {
        for k in 1..=4 {
            let v = kahler_rank(&x_to_the_p(p, k)?).map_err(|e| e.to_string())?;
            ensure(!v.vanishes, || format!("x^{p} over Z/{p}^{k} accepted"))?;
            controls += 1;
        }
    }
    Ok(format!(
        "36 towers, {en} E_n certificates, {controls}/{controls} controls rejected; factor tables only for {}",
        partial.join(", ")
    ))
}

fn criterion_7(runner: &mut TestRunner) -> Check {
    let mut certified = 0;
    for p in [2u64, 3, 5] {
        for k in 1..=4 {
            for l in 0..=1 {
                let pres = truncation_presentation(p, k, l).map_err(|e| e.to_string())?;
                if kahler_rank(&pres).map_err(|e| e.to_string())?.vanishes {
                    let aq =
                        aq_low(&pres, &ModuleDescriptor::Regular).map_err(|e| e.to_string())?;
                    ensure(aq.vanishes(), || {
                        format!("AQ nonzero on T_{{{l},{k}}} at p={p}")
                    })?;
                    certified += 1;
                }
            }
        }
    }
    let q_w = FinitePresentation::new(BaseRing::Rationals, false, vec!["w".into()], vec![])
        .map_err(|e| e.to_string())?;
    let point = ModuleDescriptor::Point {
        values: vec![ExactRational::zero()],
        v: None,
    };
    let aq = aq_low(&q_w, &point).map_err(|e| e.to_string())?;
    ensure(
        aq.aq0 == BaseModule::Q { rank: 1 } && aq.aq1 == BaseModule::Q { rank: 0 },
        || format!("aq_low(Q[w]|Q; Q) = {aq:?}"),
    )?;
    let cases = sample(runner, presentation_case(), 50);
    let mut etale = 0;
    for (p, k, lowers) in &cases {
        let pres = separated(*p, *k, lowers);
        let v = kahler_rank(&pres).map_err(|e| e.to_string())?;
        let aq = aq_low(&pres, &ModuleDescriptor::Regular).map_err(|e| e.to_string())?;
        ensure(v.vanishes == aq.vanishes(), || {
            format!("Jacobian and Smith form disagree on {:?}", pres.describe())
        })?;
        ensure(
            v.vanishes == lowers.iter().all(|l| separable_mod_p(*p, l)),
            || format!("separability disagrees on {:?}", pres.describe()),
        )?;
        if v.vanishes {
            etale += 1;
            certified += 1;
        }
    }
    Ok(format!(
        "{certified} certified presentations with AQ = 0, Q[w] gives (1, 0), 50/50 agree ({etale} étale)"
    ))
}

fn criterion_8(runner: &mut TestRunner) -> Check {
    let primes = [3u64, 5, 7];
    let polys = sample(runner, (laurent(), laurent(), 1u32..=4), 200);
    for (i, (f, g, n)) in polys.iter().enumerate() {
        let p = primes[i % 3];
        let pf = project_invariant(f, p).map_err(|e| e.to_string())?;
        ensure(
            project_invariant(&pf, p).map_err(|e| e.to_string())? == pf,
            || format!("projection not idempotent on {f}"),
        )?;
        // the projection formula for an invariant multiplier
        let inv = project_invariant(g, p).map_err(|e| e.to_string())?;
        let lhs = project_invariant(&(inv.clone() * f.clone()), p).map_err(|e| e.to_string())?;
        ensure(lhs == inv * pf, || {
            format!("projection formula fails on {f}")
        })?;
        // the numeric average needs p-integral coefficients
        let integral = LaurentPoly::from_terms(
            f.terms()
                .iter()
                .filter(|(_, c)| is_p_integral(c, p))
                .map(|(e, c)| (*e, c.clone())),
        );
        let check = numeric_action_check(&integral, p, *n).map_err(|e| e.to_string())?;
        ensure(check.agrees, || {
            format!("numeric average differs on {integral} mod {p}^{n}")
        })?;
    }
    for p in primes {
        for (i, e) in e_family(p, 3)
            .map_err(|e| e.to_string())?
            .iter()
            .enumerate()
        {
            ensure(is_invariant(e, p).map_err(|e| e.to_string())?, || {
                format!("e_{} not invariant at p={p}", i + 1)
            })?;
        }
    }
    for p in [3u64, 5] {
        for k in 1..=3 {
            let c = etale_over_invariants_check(p, k).map_err(|e| e.to_string())?;
            ensure(c.etale && c.cross_checked, || {
                format!("not étale at p={p} k={k}")
            })?;
            let ctl = etale_over_invariants_control(p, k).map_err(|e| e.to_string())?;
            ensure(!ctl.etale, || format!("control accepted at p={p} k={k}"))?;
        }
    }
    Ok("200 polynomials, e_1..e_3 invariant, étale over invariants for p in {3,5}, k <= 3".into())
}

fn criterion_9(runner: &mut TestRunner) -> Check {
    for d in 0..=5 {
        for k in 1..=4 {
            let r = verify_xi_basis(d, k).map_err(|e| e.to_string())?;
            ensure(r.invertible, || format!("xi basis singular at d={d} k={k}"))?;
        }
    }
    let accept = parse_poly("(w^2-1)/8").map_err(|e| e.to_string())?;
    ensure(
        ko_membership(&accept).map_err(|e| e.to_string())?.member,
        || "(w^2-1)/8 rejected".into(),
    )?;
    let reject = parse_poly("(w^2-1)/16").map_err(|e| e.to_string())?;
    let v = ko_membership(&reject).map_err(|e| e.to_string())?;
    ensure(
        !v.member && v.witness == Some(Witness::Residue { p: 2, a: 4, u: 3 }),
        || format!("(w^2-1)/16 gave {v:?}"),
    )?;
    let pairs = sample(runner, (ko_element(), ko_element()), 100);
    for (f, g) in &pairs {
        let fg = f.clone() * g.clone();
        ensure(
            ko_membership(&fg).map_err(|e| e.to_string())?.member,
            || format!("product {fg} rejected"),
        )?;
    }
    Ok("24 xi bases invertible, witness u = 3, 100/100 products accepted".into())
}

fn criterion_10() -> Check {
    let mut compared = 0;
    for p in [2u64, 3] {
        for l in 0..=2 {
            let tables = (1..=4)
                .map(|k| {
                    let ring = truncation_presentation(p, k, l)?.quotient_ring()?;
                    StructureTable::of(&ring)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            for k in 1..=3u32 {
                let reduced = tables[k as usize].reduce(k).map_err(|e| e.to_string())?;
                ensure(
                    reduced.to_json_string() == tables[k as usize - 1].to_json_string(),
                    || format!("T_{{{l},{}}} mod {p}^{k} differs at p={p}", k + 1),
                )?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} reductions byte-identical"))
}

fn main() {
    let mut runner = TestRunner::deterministic();
    let criteria: Vec<Criterion> = vec![
        (
            "binomial integrality vs residue sweep",
            Box::new(criterion_1),
        ),
        (
            "product law and leading coefficients",
            Box::new(criterion_2),
        ),
        ("generator tables d_m, e_m", Box::new(|_| criterion_3())),
        ("p-local basis unimodularity", Box::new(|_| criterion_4())),
        ("Hensel tower on value tables", Box::new(|_| criterion_5())),
        (
            "étale certificates and negative controls",
            Box::new(|_| criterion_6()),
        ),
        ("André-Quillen consistency", Box::new(criterion_7)),
        ("invariant subring", Box::new(criterion_8)),
        ("KO algebra", Box::new(criterion_9)),
        ("tower compatibility", Box::new(|_| criterion_10())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut runner);
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} [{secs:.2} s]: {detail}",
            i + 1
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
