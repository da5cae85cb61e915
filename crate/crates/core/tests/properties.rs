//! Randomized checks of the arithmetic and polynomial engines against
//! small, independent oracles written here.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use septic_core::arith::{
    count_coprime_roots, crt, factor, is_kth_power_free, valuation, Factorization, ResidueSystem,
};
use septic_core::poly::{
    certify_irreducible_deg7, discriminant, discriminant_subresultant, primitive_gcd, resultant,
    resultant_subresultant, IntPoly,
};

// ---- oracles ----

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with the seven-base set known to be exact below 2^64.
fn oracle_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
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
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn brute_kth_power_free(n: u64, k: u32) -> bool {
    let mut d = 2u64;
    while let Some(dk) = d.checked_pow(k) {
        if dk > n {
            break;
        }
        if n.is_multiple_of(dk) {
            return false;
        }
        d += 1;
    }
    true
}

fn as_pairs(f: &Factorization) -> Vec<(u64, u32)> {
    f.factors()
        .iter()
        .map(|(p, e)| (p.to_u64().unwrap(), *e))
        .collect()
}

fn poly_strategy(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_degree + 1).prop_map(|c| IntPoly::from_coeffs(&c))
}

fn nonconstant(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    poly_strategy(max_degree, bound).prop_filter("nonconstant", |p| !p.is_constant())
}

// ---- factorization ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn factorization_round_trip(n in 1u64..100_000_000_000_000) {
        let f = factor(&BigInt::from(n)).unwrap();
        prop_assert!(f.is_complete());
        let mut product = BigUint::one();
        let mut last = BigUint::zero();
        for (p, e) in f.factors() {
            prop_assert!(*e >= 1);
            prop_assert!(p > &last);
            prop_assert!(oracle_is_prime(p.to_u64().unwrap()), "{} is not prime", p);
            product *= p.pow(*e);
            last = p.clone();
        }
        prop_assert_eq!(product, BigUint::from(n));
        let text = f.to_string();
        prop_assert_eq!(text.parse::<Factorization>().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn factorization_matches_trial_division(n in 1u64..10_000_000_000) {
        let f = factor(&BigInt::from(n)).unwrap();
        prop_assert_eq!(as_pairs(&f), trial_factor(n));
    }

    #[test]
    fn negative_inputs_use_magnitude(n in 1i64..1_000_000_000_000) {
        let pos = factor(&BigInt::from(n)).unwrap();
        let neg = factor(&BigInt::from(-n)).unwrap();
        prop_assert_eq!(pos, neg);
    }

    #[test]
    fn valuation_is_additive(
        pi in 0usize..12,
        n in (1i64..1_000_000_000).prop_union(-1_000_000_000i64..-1),
        m in 1i64..1_000_000_000,
    ) {
        let p = BigUint::from([2u32, 3, 5, 7, 11, 13, 29, 43, 101, 1163, 65537, 999_983][pi]);
        let (bn, bm) = (BigInt::from(n), BigInt::from(m));
        let lhs = valuation(&p, &bn).unwrap() + valuation(&p, &bm).unwrap();
        prop_assert_eq!(lhs, valuation(&p, &(&bn * &bm)).unwrap());
    }

    #[test]
    fn power_free_matches_brute_force(n in -100_000i64..=100_000, k in 2u32..=6) {
        prop_assume!(n != 0);
        let got = is_kth_power_free(&BigInt::from(n), k).unwrap();
        prop_assert_eq!(got, Some(brute_kth_power_free(n.unsigned_abs(), k)));
    }

    // ---- CRT ----

    #[test]
    fn crt_satisfies_every_congruence(
        picks in prop::collection::btree_set(0usize..168, 1..7),
        residues in prop::collection::vec(-10_000i64..10_000, 7),
    ) {
        let primes: Vec<u64> = (2u64..1000).filter(|&p| oracle_is_prime(p)).collect();
        let pairs: Vec<(i64, i64)> = picks
            .iter()
            .zip(&residues)
            .map(|(&i, &r)| (r, primes[i] as i64))
            .collect();
        let system = ResidueSystem::from_pairs(pairs.iter().copied()).unwrap();
        let (k, c) = crt(&system).unwrap();
        let expected_c: i64 = pairs.iter().map(|p| p.1).product();
        prop_assert_eq!(&c, &BigInt::from(expected_c));
        prop_assert!(!k.is_negative() && k < c);
        for (r, m) in &pairs {
            prop_assert_eq!(k.to_i64().unwrap().rem_euclid(*m), r.rem_euclid(*m));
        }
        prop_assert!(system.is_satisfied_by(&k));
    }

    #[test]
    fn coprime_roots_are_multiplicative(p in poly_strategy(4, 50), a in 2u64..40, b in 2u64..40) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let whole = count_coprime_roots(&p, a * b).unwrap();
        prop_assert_eq!(whole, count_coprime_roots(&p, a).unwrap() * count_coprime_roots(&p, b).unwrap());
    }
}

#[test]
fn power_free_exhaustive_small_range() {
    for n in 1u64..=100_000 {
        for k in 2..=6 {
            let want = brute_kth_power_free(n, k);
            for signed in [n as i64, -(n as i64)] {
                let got = is_kth_power_free(&BigInt::from(signed), k).unwrap();
                assert_eq!(got, Some(want), "n = {signed}, k = {k}");
            }
        }
    }
}

// ---- polynomials ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn resultant_antisymmetry(p in nonconstant(7, 1000), q in nonconstant(7, 1000)) {
        let pq = resultant(&p, &q).unwrap();
        let qp = resultant(&q, &p).unwrap();
        let sign = if (p.deg() * q.deg()) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        prop_assert_eq!(pq, sign * qp);
    }

    #[test]
    fn resultant_routes_agree(p in poly_strategy(7, 1000), q in poly_strategy(7, 1000)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(resultant(&p, &q).unwrap(), resultant_subresultant(&p, &q).unwrap());
    }

    #[test]
    fn discriminant_routes_agree(p in poly_strategy(7, 1000)) {
        prop_assume!(p.deg() >= 2);
        prop_assert_eq!(discriminant(&p).unwrap(), discriminant_subresultant(&p).unwrap());
    }

    #[test]
    fn resultant_of_products_multiplies(a in nonconstant(3, 50), b in nonconstant(3, 50), c in nonconstant(3, 50)) {
        let lhs = resultant(&(&a * &b), &c).unwrap();
        prop_assert_eq!(lhs, resultant(&a, &c).unwrap() * resultant(&b, &c).unwrap());
    }

    #[test]
    fn eval_compose_commute(p in poly_strategy(6, 100), q in poly_strategy(4, 100), x in -1000i64..1000) {
        let x = BigInt::from(x);
        prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
    }

    #[test]
    fn shift_is_compose_with_linear(p in poly_strategy(7, 100), a in -50i64..50) {
        prop_assert_eq!(p.shift(&BigInt::from(a)), p.compose(&IntPoly::linear(1, a)));
    }

    #[test]
    fn gcd_divides_both(a in nonconstant(4, 30), b in nonconstant(4, 30), c in nonconstant(3, 30)) {
        let (p, q) = (&a * &c, &b * &c);
        let g = primitive_gcd(&p, &q).unwrap();
        prop_assert!(p.is_divisible_by(&g));
        prop_assert!(q.is_divisible_by(&g));
        prop_assert!(g.deg() >= c.deg());
        prop_assert!(g.leading().is_positive());
    }

    #[test]
    fn certificate_never_accepts_an_integer_root(r in -20i64..=20, tail in prop::collection::vec(-30i64..=30, 6)) {
        let mut coeffs = tail;
        coeffs.push(1);
        let f = &IntPoly::linear(1, -r) * &IntPoly::from_coeffs(&coeffs);
        prop_assert_eq!(certify_irreducible_deg7(&f).unwrap(), None);
    }

    #[test]
    fn certified_polynomials_have_no_rational_root(tail in prop::collection::vec(-40i64..=40, 7)) {
        prop_assume!(tail[0] != 0);
        let mut coeffs = tail.clone();
        coeffs.push(1);
        let f = IntPoly::from_coeffs(&coeffs);
        if certify_irreducible_deg7(&f).unwrap().is_some() {
            // Monic, so rational roots are integer divisors of the constant term.
            let a0 = tail[0].unsigned_abs();
            for d in (1..=a0).filter(|d| a0 % d == 0) {
                for root in [d as i64, -(d as i64)] {
                    prop_assert!(!f.eval_i64(root).is_zero(), "{} has root {}", f, root);
                }
            }
        }
    }

    #[test]
    fn text_round_trip(p in poly_strategy(10, 1_000_000)) {
        prop_assert_eq!(p.to_string().parse::<IntPoly>().unwrap(), p);
    }
}
