//! Polynomials over a prime field `F_q` (with `q` below 2^32) and the
//! degree-7 irreducibility certificate.

use super::{is_squarefree, IntPoly};
use crate::arith::primes::{is_prime_u64, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Number of admissible primes tried before giving up on a certificate.
pub const CERTIFY_PRIME_COUNT: usize = 25;

/// Candidate primes are drawn from below this bound.
const CERTIFY_PRIME_LIMIT: u64 = 10_000;

/// Polynomial over `F_q`, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl ModPoly {
    pub fn new(mut coeffs: Vec<u64>, modulus: u64) -> Self {
        assert!(is_prime_u64(modulus) && modulus < 1 << 32, "modulus must be a prime below 2^32");
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs, modulus }
    }

    pub fn from_int(p: &IntPoly, modulus: u64) -> Self {
        Self::new(p.reduced_coeffs(modulus), modulus)
    }

    pub fn x(modulus: u64) -> Self {
        Self::new(vec![0, 1], modulus)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let q = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + q - b) % q
            })
            .collect();
        ModPoly::new(c, q)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::new(Vec::new(), self.modulus);
        }
        let q = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, q)) % q;
            }
        }
        ModPoly::new(out, q)
    }

    /// Remainder of division by the nonzero `d`.
    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        let q = self.modulus;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = pow_mod(d.coeffs[dd], q - 2, q);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let factor = mul_mod(r[top], inv, q);
            if factor != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = (r[idx] + q - mul_mod(factor, dc, q)) % q;
                }
            }
            r.pop();
        }
        ModPoly::new(r, q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> ModPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let q = self.modulus;
                let inv = pow_mod(lc, q - 2, q);
                ModPoly::new(self.coeffs.iter().map(|&c| mul_mod(c, inv, q)).collect(), q)
            }
        }
    }

    pub fn derivative(&self) -> ModPoly {
        let q = self.modulus;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % q, q))
            .collect();
        ModPoly::new(c, q)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::new(vec![1], self.modulus).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Looks for a prime `q` such that `p mod q` has no irreducible factor of
/// degree 1, 2 or 3. For degree 7 that forces `p mod q` to be irreducible,
/// hence `p` irreducible over Q. Primes dividing `lc(p)` or modulo which `p`
/// is not squarefree are skipped; the first [`CERTIFY_PRIME_COUNT`] remaining
/// primes below 10^4 are tried. A polynomial with a repeated factor over Q is
/// never certified.
///
/// Returns `Ok(None)` when no prime certifies; that is not a proof of
/// reducibility.
pub fn certify_irreducible_deg7(p: &IntPoly) -> Result<Option<u64>> {
    if p.degree() != Some(7) {
        return Err(Error::Domain(format!("expected a degree-7 polynomial, got {p}")));
    }
    if p.content() != 1.into() {
        return Err(Error::Domain("polynomial is not primitive".into()));
    }
    if !is_squarefree(p) {
        return Ok(None);
    }
    let mut tried = 0;
    for q in (2..CERTIFY_PRIME_LIMIT).filter(|&q| is_prime_u64(q)) {
        if tried == CERTIFY_PRIME_COUNT {
            break;
        }
        let f = ModPoly::from_int(p, q);
        if f.degree() != Some(7) {
            continue;
        }
        if f.gcd(&f.derivative()).degree() != Some(0) {
            continue;
        }
        tried += 1;
        if has_no_small_factor(&f, 3) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// True if `f` has no irreducible factor of degree `<= max_degree`, checked
/// by `gcd(f, X^(q^k) - X) = 1` for `k = 1..=max_degree`.
fn has_no_small_factor(f: &ModPoly, max_degree: usize) -> bool {
    let q = f.modulus();
    let x = ModPoly::x(q);
    let mut frob = x.rem(f);
    for _ in 0..max_degree {
        frob = frob.pow_mod(q, f);
        if f.gcd(&frob.sub(&x)).degree() != Some(0) {
            return false;
        }
    }
    true
}
