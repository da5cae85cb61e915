//! Conductor, discriminant and Pólya group of `K_t`, read off the
//! factorization of `E(t)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{valuation, Factorization, Factorizer};
use crate::error::{Error, Result};
use crate::family::{e_value, Catalogue, SepticModel};
use crate::poly::discriminant;

const SEVEN: u32 = 7;

fn seven() -> BigUint {
    BigUint::from(SEVEN)
}

fn nonzero(t: i64) -> Result<()> {
    if t == 0 {
        Err(Error::Domain("degenerate parameter t = 0".into()))
    } else {
        Ok(())
    }
}

fn complete_factorization(t: i64, fz: &dyn Factorizer) -> Result<Factorization> {
    let fact = fz.factor(&e_value(t))?;
    if !fact.is_complete() {
        return Err(Error::Incomplete(fact.cofactor().clone()));
    }
    Ok(fact)
}

/// Exponent of 7 in the conductor: 2 when `t ≡ 2 (mod 7)`, else 0.
pub fn alpha_of(t: i64) -> u32 {
    if t.rem_euclid(7) == 2 {
        2
    } else {
        0
    }
}

/// Conductor from a complete factorization of `E(t)`, with its prime support
/// in ascending order.
fn conductor_from(t: i64, fact: &Factorization) -> (BigUint, Vec<BigUint>) {
    let alpha = alpha_of(t);
    let mut primes = Vec::new();
    let mut value = seven().pow(alpha);
    if alpha > 0 {
        primes.push(seven());
    }
    for (q, e) in fact.factors() {
        if (q % SEVEN).is_one() && e % SEVEN != 0 {
            value *= q;
            primes.push(q.clone());
        }
    }
    primes.sort();
    (value, primes)
}

/// `7^α · ∏ q` over primes `q ≡ 1 (mod 7)` dividing `E(t)` to an exponent
/// not divisible by 7.
pub fn conductor(t: i64, fz: &dyn Factorizer) -> Result<BigUint> {
    nonzero(t)?;
    let fact = complete_factorization(t, fz)?;
    Ok(conductor_from(t, &fact).0)
}

/// `conductor^6`.
pub fn field_discriminant(t: i64, fz: &dyn Factorizer) -> Result<BigUint> {
    Ok(conductor(t, fz)?.pow(6))
}

/// The conductor computed straight from the coefficients of the reduced
/// model `g_t`, using the general criterion for cyclic polynomials of prime
/// degree with no `X^(p-1)` term. Independent of the `E(t)` shortcut.
pub fn conductor_crosscheck_sw(t: i64, fz: &dyn Factorizer) -> Result<BigUint> {
    let model = SepticModel::build(t, fz)?;
    let k: Vec<BigInt> = (0..6).map(|i| model.k(i)).collect();

    let common = k.iter().fold(BigInt::zero(), |acc, ki| acc.gcd(ki));
    let fact = fz.factor(&common)?;
    if !fact.is_complete() {
        return Err(Error::Incomplete(fact.cofactor().clone()));
    }
    let mut value = BigUint::one();
    for (q, _) in fact.factors() {
        if (q % SEVEN).is_one() {
            value *= q;
        }
    }

    let sw_alpha = spearman_williams_alpha(&model)?;
    Ok(value * seven().pow(sw_alpha))
}

/// Exponent of 7 from the discriminant of `g_t` and 7-adic divisibility of
/// its coefficients.
pub fn spearman_williams_alpha(model: &SepticModel) -> Result<u32> {
    let p = seven();
    let v = |i: usize| -> Result<Option<u32>> {
        let ki = model.k(i);
        if ki.is_zero() {
            Ok(None)
        } else {
            valuation(&p, &ki).map(Some)
        }
    };
    let at_least = |i: usize, e: u32| -> Result<bool> { Ok(v(i)?.is_none_or(|x| x >= e)) };

    let disc = discriminant(&model.g)?;
    let disc_v = valuation(&p, &disc)?;
    let p_u = SEVEN;
    let holds = if disc_v < p_u * (p_u - 1) {
        (1..=5).try_fold(true, |acc, i| Ok::<_, Error>(acc && at_least(i, 1)?))?
    } else {
        let exact_k0 = v(0)? == Some(p_u - 1);
        let mut ok = exact_k0 && at_least(1, p_u - 1)?;
        for i in 2..=5 {
            ok = ok && at_least(i, p_u + 1 - i as u32)?;
        }
        ok
    };
    Ok(if holds { 2 } else { 0 })
}

/// `E(t) = 7^α · A · B^2 · C^3 · D^4` with `A..D` squarefree, pairwise
/// coprime and prime to 7.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerfreeDecomposition {
    pub alpha: u32,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl PowerfreeDecomposition {
    pub fn reconstruct(&self) -> BigUint {
        seven().pow(self.alpha)
            * &self.a
            * self.b.pow(2)
            * self.c.pow(3)
            * self.d.pow(4)
    }
}

pub fn powerfree_decomposition(t: i64, fz: &dyn Factorizer) -> Result<PowerfreeDecomposition> {
    nonzero(t)?;
    let fact = complete_factorization(t, fz)?;
    let mut out = PowerfreeDecomposition {
        alpha: 0,
        a: BigUint::one(),
        b: BigUint::one(),
        c: BigUint::one(),
        d: BigUint::one(),
    };
    for (q, e) in fact.factors() {
        if *q == seven() {
            out.alpha = *e;
            if *e >= 5 {
                return Err(outside(t, q, *e));
            }
            continue;
        }
        let slot = match e {
            1 => &mut out.a,
            2 => &mut out.b,
            3 => &mut out.c,
            4 => &mut out.d,
            _ => return Err(outside(t, q, *e)),
        };
        *slot *= q;
    }
    Ok(out)
}

fn outside(t: i64, q: &BigUint, e: u32) -> Error {
    Error::OutsideHypothesis(format!("E({t}) is divisible by {q}^{e}, not fifth-power free"))
}

fn fifth_power_free(t: i64, fact: &Factorization) -> Result<()> {
    match fact.factors().iter().find(|(_, e)| *e >= 5) {
        Some((q, e)) => Err(outside(t, q, *e)),
        None => Ok(()),
    }
}

fn rank_from(t: i64, fact: &Factorization) -> Result<usize> {
    fifth_power_free(t, fact)?;
    let omega = fact.omega()?;
    let drop = if t % 2 == 0 { 2 } else { 1 };
    omega
        .checked_sub(drop)
        .ok_or_else(|| Error::Domain(format!("ω(E({t})) = {omega} is below {drop}")))
}

/// 7-rank of `Po(K_t)`: `ω(E(t)) - 2` for even `t`, `ω(E(t)) - 1` for odd
/// `t`. The group is elementary abelian, so the rank determines it.
/// Requires `E(t)` fifth-power free.
pub fn polya_group(t: i64, fz: &dyn Factorizer) -> Result<usize> {
    nonzero(t)?;
    let fact = complete_factorization(t, fz)?;
    rank_from(t, &fact)
}

/// `|Po(K)| = ∏ e_p / 7` for a real cyclic field of degree 7 with no unit of
/// norm -1: every ramified prime has `e_p = 7`.
pub fn polya_order_chabert(t: i64, fz: &dyn Factorizer) -> Result<BigUint> {
    nonzero(t)?;
    let fact = complete_factorization(t, fz)?;
    let (_, primes) = conductor_from(t, &fact);
    if primes.is_empty() {
        return Err(Error::Domain(format!("K_{t} would be unramified")));
    }
    let product = seven().pow(primes.len() as u32);
    Ok(product / seven())
}

/// True iff every prime `p > 7` dividing `E(t)` is `≡ 1 (mod 7)`.
pub fn prime_congruence_check(t: i64, fz: &dyn Factorizer) -> Result<bool> {
    let fact = complete_factorization(t, fz)?;
    Ok(fact
        .factors()
        .iter()
        .filter(|(q, _)| *q > seven())
        .all(|(q, _)| (q % SEVEN).is_one()))
}

/// Monogenicity is impossible in this family; the field index is one when
/// `disc(f_t)` is prime to 2, 3 and 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonogenicReport {
    pub monogenic: bool,
    pub index_one_certified: bool,
}

pub fn monogenic_report(t: i64) -> Result<MonogenicReport> {
    nonzero(t)?;
    let cat = Catalogue::standard();
    let certified = [2u64, 3, 5].iter().all(|&p| {
        let r = t.rem_euclid(p as i64) as u64;
        r != 0
            && cat.e.eval_mod(r, p) != 0
            && cat.disc_quartic.eval_mod(r, p) != 0
            && cat.disc_quintic.eval_mod(r, p) != 0
    });
    Ok(MonogenicReport {
        monogenic: false,
        index_one_certified: certified,
    })
}

/// `7^rank`, an upper bound for the Pólya number.
pub fn polya_number_bound(t: i64, fz: &dyn Factorizer) -> Result<BigUint> {
    Ok(seven().pow(polya_group(t, fz)? as u32))
}

/// Everything known about `K_t`; fields that could not be established are
/// `None` and the reason is kept in `unknown_reasons`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldReport {
    pub t: i64,
    pub e_value: BigInt,
    pub e_factorization: Factorization,
    pub fifth_power_free: Option<bool>,
    pub alpha: u32,
    pub conductor: Option<BigUint>,
    pub field_discriminant: Option<BigUint>,
    pub polya_rank: Option<usize>,
    pub is_polya: Option<bool>,
    pub polya_order: Option<BigUint>,
    pub polya_number_bound: Option<BigUint>,
    pub ramified_primes: Option<Vec<BigUint>>,
    pub monogenic: bool,
    pub index_one_certified: bool,
    pub unknown_reasons: Vec<String>,
}

impl FieldReport {
    /// Fails only for `t = 0` or a factorizer error; incomplete
    /// factorizations and out-of-hypothesis values become unknown fields.
    pub fn compute(t: i64, fz: &dyn Factorizer) -> Result<FieldReport> {
        nonzero(t)?;
        let e = e_value(t);
        let fact = fz.factor(&e)?;
        let mono = monogenic_report(t)?;
        let mut report = FieldReport {
            t,
            e_value: e,
            e_factorization: fact.clone(),
            fifth_power_free: fact.is_kth_power_free(5),
            alpha: alpha_of(t),
            conductor: None,
            field_discriminant: None,
            polya_rank: None,
            is_polya: None,
            polya_order: None,
            polya_number_bound: None,
            ramified_primes: None,
            monogenic: mono.monogenic,
            index_one_certified: mono.index_one_certified,
            unknown_reasons: Vec::new(),
        };
        if !fact.is_complete() {
            report
                .unknown_reasons
                .push(format!("E({t}) has an unfactored cofactor {}", fact.cofactor()));
            return Ok(report);
        }
        let (cond, primes) = conductor_from(t, &fact);
        report.field_discriminant = Some(cond.pow(6));
        report.conductor = Some(cond);
        report.ramified_primes = Some(primes);
        match rank_from(t, &fact) {
            Ok(rank) => {
                let order = seven().pow(rank as u32);
                report.polya_rank = Some(rank);
                report.is_polya = Some(rank == 0);
                report.polya_number_bound = Some(order.clone());
                report.polya_order = Some(order);
            }
            Err(e) => report.unknown_reasons.push(e.to_string()),
        }
        Ok(report)
    }

    /// `ω(E(t))` when the factorization is complete.
    pub fn omega(&self) -> Option<usize> {
        self.e_factorization.omega().ok()
    }
}

struct Dec<'a, T>(&'a T);

impl<T: std::fmt::Display> Serialize for Dec<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self.0)
    }
}

/// A known value, or the string `"unknown"`.
struct OrUnknown<'a, T>(&'a Option<T>);

impl<T: Serialize> Serialize for OrUnknown<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => v.serialize(s),
            None => s.serialize_str("unknown"),
        }
    }
}

fn dec_opt(v: &Option<BigUint>) -> Option<String> {
    v.as_ref().map(|x| x.to_string())
}

impl Serialize for FieldReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldReport", 14)?;
        st.serialize_field("t", &Dec(&self.t))?;
        st.serialize_field("E_value", &Dec(&self.e_value))?;
        st.serialize_field("E_factorization", &self.e_factorization)?;
        st.serialize_field("fifth_power_free", &OrUnknown(&self.fifth_power_free))?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("conductor", &OrUnknown(&dec_opt(&self.conductor)))?;
        st.serialize_field("field_discriminant", &OrUnknown(&dec_opt(&self.field_discriminant)))?;
        st.serialize_field("polya_rank", &OrUnknown(&self.polya_rank))?;
        st.serialize_field("is_polya", &OrUnknown(&self.is_polya))?;
        st.serialize_field("polya_order", &OrUnknown(&dec_opt(&self.polya_order)))?;
        st.serialize_field("polya_number_bound", &OrUnknown(&dec_opt(&self.polya_number_bound)))?;
        let ramified = self
            .ramified_primes
            .as_ref()
            .map(|ps| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        st.serialize_field("ramified_primes", &OrUnknown(&ramified))?;
        st.serialize_field("monogenic", &self.monogenic)?;
        st.serialize_field("index_one_certified", &self.index_one_certified)?;
        st.end()
    }
}

/// `v_2(E(t))`, used by callers checking the even-parameter shape.
pub fn two_adic_valuation_of_e(t: i64) -> u32 {
    let e = e_value(t);
    e.to_biguint()
        .and_then(|u| u.trailing_zeros())
        .and_then(|z| z.to_u32())
        .unwrap_or(0)
}
