use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::primes::primes_up_to;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Largest modulus any residue scan in this module will enumerate.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// `#{n mod d : gcd(n, d) = 1, d | f(n)}` by a full residue scan.
pub fn count_coprime_roots(f: &IntPoly, d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::Domain(format!("modulus {d} is below 2")));
    }
    if d > ENUMERATION_BUDGET {
        return Err(Error::Resource(format!(
            "residue scan mod {d} exceeds budget {ENUMERATION_BUDGET}"
        )));
    }
    let coeffs = f.reduced_coeffs(d);
    let m = d as u128;
    let count = (0..d)
        .filter(|&n| n.gcd(&d) == 1)
        .filter(|&n| {
            let x = n as u128;
            coeffs.iter().rev().fold(0u128, |acc, &c| (acc * x + c as u128) % m) == 0
        })
        .count();
    Ok(count as u64)
}

/// Truncated Euler product `∏_{p <= prime_bound} (1 - ρ'(p^k)/φ(p^k))`.
pub fn density_estimate(f: &IntPoly, k: u32, prime_bound: u64) -> Result<BigRational> {
    if f.is_constant() {
        return Err(Error::Domain("density of a constant polynomial".into()));
    }
    if k == 0 {
        return Err(Error::Domain("power must be positive".into()));
    }
    let mut acc = BigRational::one();
    for p in primes_up_to(prime_bound) {
        let d = p
            .checked_pow(k)
            .filter(|&d| d <= ENUMERATION_BUDGET)
            .ok_or_else(|| Error::Resource(format!("{p}^{k} exceeds the enumeration budget")))?;
        let rho = count_coprime_roots(f, d)?;
        let phi = d / p * (p - 1);
        acc *= BigRational::one() - BigRational::new(BigInt::from(rho), BigInt::from(phi));
    }
    Ok(acc)
}
