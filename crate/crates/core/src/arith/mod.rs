//! Arbitrary-precision integer services: primality, factorization,
//! valuations, power-free tests, CRT and coprime root counting.

mod crt;
mod factor;
pub mod primes;
mod roots;

pub use crt::{crt, ResidueSystem};
pub use factor::{valuation, FactorBudget, Factorization, Factorizer, RhoFactorizer};
pub use primes::{is_prime, is_prime_u64};
pub use roots::{count_coprime_roots, density_estimate, ENUMERATION_BUDGET};

use num_bigint::BigInt;

use crate::error::Result;

/// Factors `|n|` with the default budget.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    RhoFactorizer::default().factor(n)
}

/// Number of distinct prime divisors of `|n|`.
pub fn omega(n: &BigInt) -> Result<usize> {
    factor(n)?.omega()
}

/// Whether no prime divides `n` to the `k`-th power; `None` when the
/// factoring budget left a cofactor that could hide one.
pub fn is_kth_power_free(n: &BigInt, k: u32) -> Result<Option<bool>> {
    Ok(factor(n)?.is_kth_power_free(k))
}
