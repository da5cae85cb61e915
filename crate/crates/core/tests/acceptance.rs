//! End-to-end acceptance checks. Each test writes one `PASS`/`FAIL` line
//! straight to stderr (bypassing capture) before asserting.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use septic_core::arith::{crt, factor, is_kth_power_free, valuation, ResidueSystem, RhoFactorizer};
use septic_core::blocks::{build_block, verify_block};
use septic_core::family::{
    e_value, residue_class_valuation, seven_adic_class_table, verify_bezout, verify_cyclotomic_identity,
    verify_disc_f, verify_disc_g, verify_h_factorization, verify_psi_identity, Catalogue, SepticModel,
};
use septic_core::field::{
    conductor, conductor_crosscheck_sw, polya_group, polya_order_chabert, prime_congruence_check, FieldReport,
};
use septic_core::poly::{primitive_gcd, resultant, resultant_subresultant, IntPoly};

fn verdict(n: u32, ok: bool, what: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "{tag} criterion {n}: {what}");
}

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn e_u64(t: i64) -> u64 {
    let t = t as i128;
    let v = t.pow(6) + 2 * t.pow(5) + 11 * t.pow(4) + t.pow(3) + 16 * t.pow(2) + 4 * t + 8;
    u64::try_from(v).unwrap()
}

#[test]
fn criterion_1_identity_suite() {
    let start = Instant::now();
    let cat = Catalogue::standard();
    let results = [
        ("h-factorizations", verify_h_factorization(cat)),
        ("Bezout", verify_bezout(cat)),
        ("cyclotomic", verify_cyclotomic_identity(cat)),
        ("psi", verify_psi_identity(cat)),
    ];
    let elapsed = start.elapsed();
    let failed: Vec<_> = results.iter().filter(|(_, r)| r.is_err()).collect();
    let ok = failed.is_empty() && elapsed < Duration::from_secs(60);
    verdict(1, ok, &format!("identity suite in {elapsed:.2?}"));
    assert!(failed.is_empty(), "{failed:?}");
    assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn criterion_2_discriminant_closed_forms() {
    let cat = Catalogue::standard();
    let fz = RhoFactorizer::default();
    let g = verify_disc_g(cat, -10..=10, &fz).unwrap();
    let f = verify_disc_f(cat, -20..=20).unwrap();
    verdict(2, g.is_ok() && f.is_ok(), "disc(g_t) on [-10,10], disc(f_t) on [-20,20]");
    assert_eq!(g, Ok(()));
    assert_eq!(f, Ok(()));
}

#[test]
fn criterion_3_valuation_table() {
    let cat = Catalogue::standard();
    let table = seven_adic_class_table(cat).unwrap();
    let expected = [('E', 2), ('F', 1), ('G', 2), ('I', 3), ('J', 4), ('H', 5)];
    let others: Vec<u32> = [0u64, 1, 3, 4, 5, 6]
        .iter()
        .map(|&r| residue_class_valuation(&cat.e, 7, r).unwrap())
        .collect();
    let ok = table == expected && others.iter().all(|&v| v == 0);
    verdict(3, ok, &format!("7-adic class valuations {table:?}, E elsewhere {others:?}"));
    assert_eq!(table, expected);
    assert_eq!(others, vec![0; 6]);
}

#[test]
fn criterion_4_witness() {
    let start = Instant::now();
    let e = e_value(149_396);
    let v29 = valuation(&BigUint::from(29u32), &e).unwrap();
    let free = is_kth_power_free(&e, 5).unwrap();
    let elapsed = start.elapsed();
    let ok = v29 >= 5 && free == Some(false) && elapsed < Duration::from_secs(1);
    verdict(4, ok, &format!("v_29(E(149396)) = {v29}, fifth-power free = {free:?}, {elapsed:.2?}"));
    assert!(v29 >= 5);
    assert_eq!(free, Some(false));
    assert!(elapsed < Duration::from_secs(1));
}

#[test]
fn criterion_5_field_profiles() {
    // Oracle first: conductor and rank from plain trial division, before any
    // library call. 7 ramifies exactly when it divides E(t).
    let oracle = |t: i64| {
        let facts = trial_factor(e_u64(t));
        let mut cond = 1u64;
        let mut primes = 0usize;
        for (q, e) in facts {
            if q == 7 {
                cond *= 49;
                primes += 1;
            } else if q % 7 == 1 && e % 7 != 0 {
                cond *= q;
                primes += 1;
            }
        }
        (cond, primes - 1)
    };
    let expected = [(1, 43u64, 0usize), (2, 49, 0), (7, 178_837, 1), (9, 723_779, 1)];
    let fz = RhoFactorizer::default();
    let mut ok = true;
    for &(t, cond, rank) in &expected {
        let (oc, or) = oracle(t);
        let report = FieldReport::compute(t, &fz).unwrap();
        let got_c = report.conductor.clone().unwrap().to_u64().unwrap();
        let got_r = report.polya_rank.unwrap();
        ok &= oc == cond && or == rank && got_c == cond && got_r == rank;
        ok &= report.is_polya == Some(rank == 0);
        ok &= report.polya_order == Some(BigUint::from(7u32).pow(rank as u32));
    }
    verdict(5, ok, "profiles for t = 1, 2, 7, 9");
    for &(t, cond, rank) in &expected {
        assert_eq!(oracle(t), (cond, rank), "oracle at t = {t}");
        let report = FieldReport::compute(t, &fz).unwrap();
        assert_eq!(report.conductor, Some(BigUint::from(cond)), "t = {t}");
        assert_eq!(report.polya_rank, Some(rank), "t = {t}");
        assert_eq!(report.is_polya, Some(rank == 0), "t = {t}");
    }
}

#[test]
fn criterion_6_cross_checks() {
    let fz = RhoFactorizer::default();
    let mut agree = 0;
    let mut total = 0;
    let mut bad = Vec::new();
    for t in (-100i64..=100).filter(|&t| t != 0) {
        let model = SepticModel::build(t, &fz).unwrap();
        assert!(model.certificate.is_some());
        total += 1;
        let c = conductor(t, &fz).unwrap();
        let sw = conductor_crosscheck_sw(t, &fz).unwrap();
        let rank = polya_group(t, &fz).unwrap();
        let chabert = polya_order_chabert(t, &fz).unwrap();
        if c == sw && BigUint::from(7u32).pow(rank as u32) == chabert {
            agree += 1;
        } else {
            bad.push(t);
        }
    }
    verdict(6, agree == total, &format!("conductor and Pólya order cross-checks {agree}/{total}"));
    assert!(bad.is_empty(), "disagreement at {bad:?}");
}

#[test]
fn criterion_7_prime_congruence() {
    let fz = RhoFactorizer::default();
    let mut bad = Vec::new();
    for t in (-200i64..=200).filter(|&t| t != 0) {
        if !prime_congruence_check(t, &fz).unwrap() {
            bad.push(t);
        }
        // Independent pass with trial division.
        for (q, _) in trial_factor(e_u64(t)) {
            if q > 7 && q % 7 != 1 {
                bad.push(t);
            }
        }
    }
    verdict(7, bad.is_empty(), "primes > 7 of E(t) are 1 mod 7 for |t| <= 200");
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_8_block() {
    let start = Instant::now();
    let fz = RhoFactorizer::default();
    let cert = build_block(3, 2, &fz).unwrap();
    let primes: BTreeSet<BigUint> = cert.congruences().map(|(_, pr)| pr.p.clone()).collect();
    let report = verify_block(&cert, 3, &fz).unwrap();
    let elapsed = start.elapsed();
    let ok = primes.len() == 9 && report.samples_verified >= 3 && elapsed < Duration::from_secs(120);
    verdict(
        8,
        ok,
        &format!("block (3,2): {} primes, {} samples, {elapsed:.2?}", primes.len(), report.samples_verified),
    );
    assert_eq!(primes.len(), 9);
    assert!(report.samples_verified >= 3);
    assert!(elapsed < Duration::from_secs(120));
}

fn run(name: &str, f: impl FnOnce(&mut TestRunner) -> Result<(), String>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 1_000, ..Config::default() });
    f(&mut runner).map_err(|e| format!("{name}: {e}"))
}

#[test]
fn criterion_9_property_suites() {
    let outcomes = [
        run("factorization round-trip", |r| {
            r.run(&(1u64..1_000_000_000_000), |n| {
                let f = factor(&BigInt::from(n)).unwrap();
                let product = f.factors().iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
                prop_assert_eq!(product, BigUint::from(n));
                let pairs: Vec<(u64, u32)> =
                    f.factors().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
                if n < 10_000_000_000 {
                    prop_assert_eq!(pairs, trial_factor(n));
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
        }),
        run("CRT verification", |r| {
            let moduli = [3i64, 7, 11, 43, 71, 127, 1163, 2297];
            r.run(&prop::collection::vec(-100_000i64..100_000, moduli.len()), |res| {
                let system = ResidueSystem::from_pairs(res.iter().copied().zip(moduli)).unwrap();
                let (k, c) = crt(&system).unwrap();
                prop_assert_eq!(c, BigInt::from(moduli.iter().product::<i64>()));
                for (x, m) in res.iter().zip(moduli) {
                    let km = (&k % m).to_i64().unwrap();
                    prop_assert_eq!(km.rem_euclid(m), x.rem_euclid(m));
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
        }),
        run("gcd/resultant agreement", |r| {
            let poly = prop::collection::vec(-200i64..=200, 2..=7).prop_map(|c| IntPoly::from_coeffs(&c));
            r.run(&(poly.clone(), poly), |(p, q)| {
                prop_assume!(!p.is_constant() && !q.is_constant());
                let res = resultant(&p, &q).unwrap();
                prop_assert_eq!(&res, &resultant_subresultant(&p, &q).unwrap());
                let g = primitive_gcd(&p, &q).unwrap();
                prop_assert_eq!(res.is_zero(), !g.is_constant());
                Ok(())
            })
            .map_err(|e| e.to_string())
        }),
        run("power-free brute force", |r| {
            r.run(&(1i64..=100_000, 2u32..=6), |(n, k)| {
                let brute = !(2i64..).take_while(|d| d.pow(k) <= n).any(|d| n % d.pow(k) == 0);
                for s in [n, -n] {
                    prop_assert_eq!(is_kth_power_free(&BigInt::from(s), k).unwrap(), Some(brute));
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
        }),
    ];
    let failures: Vec<&String> = outcomes.iter().filter_map(|o| o.as_ref().err()).collect();
    verdict(9, failures.is_empty(), "property suites at 1000 cases each");
    assert!(failures.is_empty(), "{failures:?}");
}
