//! Chinese remainder theorem over pairwise-coprime moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A list of congruences `k ≡ residue (mod modulus)`, residues normalized
/// into `[0, modulus)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResidueSystem {
    congruences: Vec<(BigInt, BigInt)>,
}

impl ResidueSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `k ≡ residue (mod modulus)`; the modulus must be at least 2.
    pub fn push(&mut self, residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<()> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(Error::Domain(format!("modulus {modulus} is below 2")));
        }
        let residue = residue.into().mod_floor(&modulus);
        self.congruences.push((residue, modulus));
        Ok(())
    }

    pub fn from_pairs<R, M>(pairs: impl IntoIterator<Item = (R, M)>) -> Result<Self>
    where
        R: Into<BigInt>,
        M: Into<BigInt>,
    {
        let mut sys = Self::new();
        for (r, m) in pairs {
            sys.push(r, m)?;
        }
        Ok(sys)
    }

    pub fn congruences(&self) -> &[(BigInt, BigInt)] {
        &self.congruences
    }

    /// True when `k` satisfies every congruence.
    pub fn is_satisfied_by(&self, k: &BigInt) -> bool {
        self.congruences
            .iter()
            .all(|(r, m)| &k.mod_floor(m) == r)
    }
}

/// Solves the system, returning `(k0, C)` with `0 <= k0 < C = ∏ moduli`.
/// An empty system yields `(0, 1)`.
pub fn crt(system: &ResidueSystem) -> Result<(BigInt, BigInt)> {
    let cs = system.congruences();
    for (i, (_, a)) in cs.iter().enumerate() {
        for (_, b) in &cs[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::Domain(format!("moduli {a} and {b} are not coprime")));
            }
        }
    }
    let mut k0 = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in cs {
        // k0 + modulus * s ≡ r (mod m)
        let inv = modulus.extended_gcd(m).x.mod_floor(m);
        let s = ((r - &k0) * inv).mod_floor(m);
        k0 += &modulus * s;
        modulus *= m;
    }
    Ok((k0.mod_floor(&modulus), modulus))
}
