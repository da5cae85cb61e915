//! Integer factorization: trial division followed by Brent's variant of
//! Pollard rho, under an explicit effort budget.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::{is_prime, mul_mod, small_primes};
use crate::error::{Error, Result};

/// Effort bound for [`RhoFactorizer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound (capped at 10^6).
    pub trial_bound: u64,
    /// Total Pollard-rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 24,
        }
    }
}

/// Prime factorization of a positive integer, possibly with an unsplit
/// composite cofactor left over when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
    cofactor: BigUint,
}

impl Factorization {
    /// Assembles a factorization from parts, merging repeated primes.
    /// `cofactor` is the product of everything left unfactored (1 if none).
    pub fn from_parts(mut primes: Vec<(BigUint, u32)>, cofactor: BigUint) -> Self {
        primes.sort();
        let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(primes.len());
        for (p, e) in primes {
            match factors.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => factors.push((p, e)),
            }
        }
        factors.retain(|(_, e)| *e > 0);
        let value = factors
            .iter()
            .fold(cofactor.clone(), |acc, (p, e)| acc * p.pow(*e));
        Factorization {
            value,
            factors,
            cofactor,
        }
    }

    pub fn one() -> Self {
        Factorization::from_parts(Vec::new(), BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Ascending (prime, exponent) pairs.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Exponent of `p` among the split factors (0 if absent).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Number of distinct prime divisors; refused for incomplete factorizations.
    pub fn omega(&self) -> Result<usize> {
        if self.is_complete() {
            Ok(self.factors.len())
        } else {
            Err(Error::Incomplete(self.cofactor.clone()))
        }
    }

    /// `Some(true)` if no exponent reaches `k`, `Some(false)` if one does,
    /// `None` if every split exponent is below `k` but a cofactor remains.
    pub fn is_kth_power_free(&self, k: u32) -> Option<bool> {
        if self.factors.iter().any(|(_, e)| *e >= k) {
            Some(false)
        } else if self.is_complete() {
            Some(true)
        } else {
            None
        }
    }

    /// Checks every structural invariant, including primality of the factors.
    pub fn validate(&self) -> Result<()> {
        let ascending = self.factors.windows(2).all(|w| w[0].0 < w[1].0);
        if !ascending {
            return Err(Error::Domain("primes not strictly increasing".into()));
        }
        if let Some((p, _)) = self.factors.iter().find(|(p, e)| *e == 0 || !is_prime(p)) {
            return Err(Error::Domain(format!("{p} is not a prime factor")));
        }
        if self.cofactor.is_zero() {
            return Err(Error::Domain("zero cofactor".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Factorization {
    /// `p1^e1 * p2^e2 * ...`; an unsplit cofactor is appended as `?c`; the
    /// empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect();
        if !self.is_complete() {
            terms.push(format!("?{}", self.cofactor));
        }
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join(" * "))
        }
    }
}

impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Factorization::one());
        }
        let bad = |term: &str| Error::Domain(format!("malformed factorization term {term:?}"));
        let mut factors = Vec::new();
        let mut cofactor = BigUint::one();
        for term in s.split('*').map(str::trim) {
            if let Some(c) = term.strip_prefix('?') {
                cofactor *= c.parse::<BigUint>().map_err(|_| bad(term))?;
                continue;
            }
            let (p, e) = match term.split_once('^') {
                Some((p, e)) => (p, e.trim().parse::<u32>().map_err(|_| bad(term))?),
                None => (term, 1),
            };
            let p = p.trim().parse::<BigUint>().map_err(|_| bad(term))?;
            factors.push((p, e));
        }
        let ascending = factors.windows(2).all(|w| w[0].0 < w[1].0);
        if !ascending {
            return Err(Error::Domain(format!("primes not ascending in {s:?}")));
        }
        let out = Factorization::from_parts(factors, cofactor);
        out.validate()?;
        Ok(out)
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Anything that can factor positive integers. Implementations must be
/// deterministic: the same input always yields the same factorization.
pub trait Factorizer: Sync {
    /// Factors `n > 0`.
    fn factor_natural(&self, n: &BigUint) -> Factorization;

    /// Factors `|n|`; zero is rejected.
    fn factor(&self, n: &BigInt) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::Domain("cannot factor zero".into()));
        }
        Ok(self.factor_natural(n.magnitude()))
    }
}

/// Trial division plus Brent-Pollard rho.
#[derive(Debug, Clone, Copy, Default)]
pub struct RhoFactorizer {
    pub budget: FactorBudget,
}

impl RhoFactorizer {
    pub fn new(budget: FactorBudget) -> Self {
        RhoFactorizer { budget }
    }
}

impl Factorizer for RhoFactorizer {
    fn factor_natural(&self, n: &BigUint) -> Factorization {
        assert!(!n.is_zero(), "factor_natural requires n > 0");
        let mut found: Vec<(BigUint, u32)> = Vec::new();
        let rest = trial_divide(n, self.budget.trial_bound, &mut found);
        let mut cofactor = BigUint::one();
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                found.push((m, 1));
                continue;
            }
            match split(&m, self.budget.rho_iterations) {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => cofactor *= m,
            }
        }
        Factorization::from_parts(found, cofactor)
    }
}

/// Strips primes up to `bound`, returning what is left. Stops early once the
/// remainder is 1, is below the square of the next trial prime, or tests prime.
fn trial_divide(n: &BigUint, bound: u64, found: &mut Vec<(BigUint, u32)>) -> BigUint {
    let mut rest = n.clone();
    for (i, &p) in small_primes().iter().enumerate() {
        if p > bound || rest.is_one() {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if (p as u128) * (p as u128) > r as u128 {
                found.push((rest, 1));
                return BigUint::one();
            }
        }
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            found.push((BigUint::from(p), e));
        }
        if (i == 1_000 || i == 10_000) && is_prime(&rest) {
            break;
        }
    }
    rest
}

/// Finds a nontrivial divisor of the composite `n`, or `None` when the
/// iteration budget runs out.
fn split(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(r) = exact_square_root(n) {
        return Some(r);
    }
    let mut remaining = budget;
    for c in 1u64.. {
        if remaining == 0 {
            return None;
        }
        let outcome = match n.to_u64() {
            Some(small) => brent_u64(small, c, &mut remaining).map(BigUint::from),
            None => brent_big(n, c, &mut remaining),
        };
        if let Some(d) = outcome {
            return Some(d);
        }
    }
    None
}

fn exact_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

const BATCH: u64 = 128;

fn brent_u64(n: u64, c: u64, remaining: &mut u64) -> Option<u64> {
    let step = |y: u64| (mul_mod(y, y, n) + c) % n;
    let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let run = BATCH.min(r - k);
            for _ in 0..run {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += run;
            *remaining = remaining.saturating_sub(run);
            if *remaining == 0 && g == 1 {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c: u64, remaining: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |y: &BigUint| (y * y + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut x = BigUint::zero();
    let mut y = BigUint::from(2u32);
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let run = BATCH.min(r - k);
            for _ in 0..run {
                y = step(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += run;
            *remaining = remaining.saturating_sub(run);
            if *remaining == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = step(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Largest `e` with `p^e | n`. `p` must be prime and `n` nonzero.
pub fn valuation(p: &BigUint, n: &BigInt) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::Domain("valuation of zero is infinite".into()));
    }
    let mut m = n.magnitude().clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}
