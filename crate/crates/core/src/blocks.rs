//! CRT certificates for blocks of consecutive parameters whose Pólya groups
//! all have 7-rank at least `r`.
//!
//! With `t = 2k + j`, the value `E(t)` is `8·U(k + j/2)` for even `j` and
//! `V(k + (j-1)/2)` for odd `j`. Forcing `r + 1` chosen primes into each of
//! these values by congruence conditions on `k` forces `ω(E(t)) - δ >= r`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{crt, Factorizer, ResidueSystem};
use crate::error::{Error, Result};
use crate::family::Catalogue;
use crate::field::FieldReport;
use crate::poly::IntPoly;

/// Default cap on how many values `h(0), h(1), ...` a harvest will factor.
pub const HARVEST_SCAN_LIMIT: u64 = 100_000;

/// Samples with `|2k + j|` up to this bound also get a full [`FieldReport`].
pub const FULL_REPORT_LIMIT: u64 = 1_000_000;

/// `[H_0, ..., H_{m-1}]` with `H_j(k) = U(k + j/2)` for even `j` and
/// `V(k + (j-1)/2)` for odd `j`.
pub fn block_polynomials(m: usize) -> Result<Vec<IntPoly>> {
    if m == 0 {
        return Err(Error::Domain("block length must be at least 1".into()));
    }
    let cat = Catalogue::standard();
    Ok((0..m)
        .map(|j| {
            let (base, shift) = if j % 2 == 0 { (&cat.u, j / 2) } else { (&cat.v, (j - 1) / 2) };
            base.shift(&BigInt::from(shift))
        })
        .collect())
}

/// A prime dividing some `H_j(k)`, with the root class of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeRoot {
    pub p: BigUint,
    pub root: BigUint,
}

/// Scans `n = 0, 1, 2, ...`, factoring `h(n)` and collecting primes not in
/// `excluded` and not dividing `lc(h)`, until `need` have been found. Each
/// prime is paired with the smallest nonnegative root of `h` modulo it; that
/// root is at most `n` because `n` itself is one.
pub fn harvest_primes(
    h: &IntPoly,
    need: usize,
    excluded: &BTreeSet<BigUint>,
    fz: &dyn Factorizer,
    scan_limit: u64,
) -> Result<Vec<PrimeRoot>> {
    if h.is_constant() {
        return Err(Error::Domain("harvest needs a nonconstant polynomial".into()));
    }
    let lc = h.leading();
    let mut found: Vec<PrimeRoot> = Vec::with_capacity(need);
    let mut seen: BTreeSet<BigUint> = BTreeSet::new();
    for n in 0..scan_limit {
        if found.len() == need {
            return Ok(found);
        }
        let value = h.eval(&BigInt::from(n));
        if value.is_zero() {
            continue;
        }
        let fact = fz.factor(&value)?;
        for p in fact.primes() {
            if found.len() == need {
                break;
            }
            let pb = BigInt::from(p.clone());
            if excluded.contains(p) || seen.contains(p) || (&lc % &pb).is_zero() {
                continue;
            }
            seen.insert(p.clone());
            let root = (0..=n)
                .find(|&x| (h.eval(&BigInt::from(x)) % &pb).is_zero())
                .expect("n is a root of h modulo p");
            found.push(PrimeRoot {
                p: p.clone(),
                root: BigUint::from(root),
            });
        }
    }
    if found.len() == need {
        return Ok(found);
    }
    Err(Error::Resource(format!(
        "found only {} of {need} primes among h(0..{scan_limit})",
        found.len()
    )))
}

/// CRT certificate for a block of `m` parameters with target rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCertificate {
    pub m: usize,
    pub r: usize,
    pub prime_sets: Vec<Vec<PrimeRoot>>,
    pub k0: BigInt,
    pub modulus: BigInt,
    pub samples_verified: usize,
}

impl BlockCertificate {
    /// Every `(p, root)` pair with its block index.
    pub fn congruences(&self) -> impl Iterator<Item = (usize, &PrimeRoot)> {
        self.prime_sets
            .iter()
            .enumerate()
            .flat_map(|(j, set)| set.iter().map(move |pr| (j, pr)))
    }

    /// Parameter `t = 2k + j` of the first field of the block at `k`.
    pub fn first_parameter(&self, k: &BigInt) -> BigInt {
        k * 2
    }
}

/// Harvests `m` disjoint sets of `r + 1` primes and solves the CRT system.
pub fn build_block(m: usize, r: usize, fz: &dyn Factorizer) -> Result<BlockCertificate> {
    build_block_with_limit(m, r, fz, HARVEST_SCAN_LIMIT)
}

pub fn build_block_with_limit(
    m: usize,
    r: usize,
    fz: &dyn Factorizer,
    scan_limit: u64,
) -> Result<BlockCertificate> {
    if r == 0 {
        return Err(Error::Domain("target rank must be at least 1".into()));
    }
    let hs = block_polynomials(m)?;
    let mut excluded = BTreeSet::new();
    let mut prime_sets = Vec::with_capacity(m);
    for h in &hs {
        let set = harvest_primes(h, r + 1, &excluded, fz, scan_limit)?;
        excluded.extend(set.iter().map(|pr| pr.p.clone()));
        prime_sets.push(set);
    }
    let system = ResidueSystem::from_pairs(
        prime_sets
            .iter()
            .flatten()
            .map(|pr| (BigInt::from(pr.root.clone()), BigInt::from(pr.p.clone()))),
    )?;
    let (k0, modulus) = crt(&system)?;
    Ok(BlockCertificate {
        m,
        r,
        prime_sets,
        k0,
        modulus,
        samples_verified: 0,
    })
}

/// Outcome for one `(k, j)` pair of a verified sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCheck {
    pub k: BigInt,
    pub j: usize,
    pub t: BigInt,
    /// Lower bound on the 7-rank, valid only if `E(t)` is fifth-power free.
    pub conditional_rank_bound: usize,
    /// `ω(H_j(k))` when `t` was small enough to factor completely.
    pub omega_h: Option<usize>,
    /// The full report, when `t` was small enough to factor completely.
    pub report: Option<FieldReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub samples_verified: usize,
    pub checks: Vec<SampleCheck>,
}

fn invalid(msg: String) -> Error {
    Error::CertificateInvalid(msg)
}

/// Re-checks the certificate's structure independently of the CRT solver,
/// then tests divisibility of `H_j(k)` for `k = k0, k0 + C, ...`.
pub fn verify_block(cert: &BlockCertificate, samples: usize, fz: &dyn Factorizer) -> Result<BlockReport> {
    let hs = block_polynomials(cert.m)?;
    if cert.prime_sets.len() != cert.m {
        return Err(invalid(format!("{} prime sets for a block of {}", cert.prime_sets.len(), cert.m)));
    }
    let mut all = BTreeSet::new();
    let mut product = BigInt::one();
    for (j, pr) in cert.congruences() {
        let p = BigInt::from(pr.p.clone());
        if !all.insert(pr.p.clone()) {
            return Err(invalid(format!("prime {} appears twice", pr.p)));
        }
        if !(hs[j].eval(&BigInt::from(pr.root.clone())) % &p).is_zero() {
            return Err(invalid(format!("{} is not a root of H_{j} mod {}", pr.root, pr.p)));
        }
        if cert.k0.mod_floor(&p) != BigInt::from(pr.root.clone()) {
            return Err(invalid(format!("k0 = {} is not ≡ {} mod {}", cert.k0, pr.root, pr.p)));
        }
        product *= p;
    }
    if cert.prime_sets.iter().any(|s| s.len() != cert.r + 1) {
        return Err(invalid(format!("every prime set must hold r + 1 = {} primes", cert.r + 1)));
    }
    if product != cert.modulus {
        return Err(invalid(format!("C = {} but the primes multiply to {product}", cert.modulus)));
    }

    let mut checks = Vec::new();
    for s in 0..samples {
        let k = &cert.k0 + &cert.modulus * BigInt::from(s);
        for (j, h) in hs.iter().enumerate() {
            let value = h.eval(&k);
            for pr in &cert.prime_sets[j] {
                if !(&value % BigInt::from(pr.p.clone())).is_zero() {
                    return Err(invalid(format!("{} does not divide H_{j}({k})", pr.p)));
                }
            }
            let t = &k * 2 + BigInt::from(j);
            let (omega_h, report) = small_sample_report(&t, &value, fz)?;
            if let Some(w) = omega_h {
                if w < cert.r + 1 {
                    return Err(invalid(format!("ω(H_{j}({k})) = {w} is below r + 1")));
                }
            }
            checks.push(SampleCheck {
                k: k.clone(),
                j,
                t,
                conditional_rank_bound: cert.r,
                omega_h,
                report,
            });
        }
    }
    Ok(BlockReport {
        samples_verified: samples,
        checks,
    })
}

fn small_sample_report(
    t: &BigInt,
    value: &BigInt,
    fz: &dyn Factorizer,
) -> Result<(Option<usize>, Option<FieldReport>)> {
    let small = t.abs() <= BigInt::from(FULL_REPORT_LIMIT) && !t.is_zero();
    if !small {
        return Ok((None, None));
    }
    let t64 = i64::try_from(t).expect("bounded by FULL_REPORT_LIMIT");
    let report = FieldReport::compute(t64, fz)?;
    let omega_h = fz.factor(value)?.omega().ok();
    Ok((omega_h, Some(report)))
}

#[derive(Serialize, Deserialize)]
struct PrimeRootJson {
    p: String,
    root: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    m: usize,
    r: usize,
    prime_sets: Vec<Vec<PrimeRootJson>>,
    k0: String,
    #[serde(rename = "C")]
    c: String,
}

impl Serialize for BlockCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            m: self.m,
            r: self.r,
            prime_sets: self
                .prime_sets
                .iter()
                .map(|set| {
                    set.iter()
                        .map(|pr| PrimeRootJson {
                            p: pr.p.to_string(),
                            root: pr.root.to_string(),
                        })
                        .collect()
                })
                .collect(),
            k0: self.k0.to_string(),
            c: self.modulus.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlockCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CertificateJson::deserialize(d)?;
        let big = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let nat = |s: &str| s.parse::<BigUint>().map_err(D::Error::custom);
        let mut prime_sets = Vec::with_capacity(raw.prime_sets.len());
        for set in &raw.prime_sets {
            let mut out = Vec::with_capacity(set.len());
            for pr in set {
                out.push(PrimeRoot {
                    p: nat(&pr.p)?,
                    root: nat(&pr.root)?,
                });
            }
            prime_sets.push(out);
        }
        Ok(BlockCertificate {
            m: raw.m,
            r: raw.r,
            prime_sets,
            k0: big(&raw.k0)?,
            modulus: big(&raw.c)?,
            samples_verified: 0,
        })
    }
}
