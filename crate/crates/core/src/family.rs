//! The polynomial catalogue of the family and the reduction pipeline
//! `f_t -> f*_t -> g_t`, plus verifiers for the polynomial identities the
//! field formulas rest on.
//!
//! Polynomials are written here with coefficients in descending degree, in
//! the same order they are usually displayed, and stored ascending.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, Factorizer};
use crate::error::{Error, Result};
use crate::poly::{certify_irreducible_deg7, discriminant, primitive_gcd, IntPoly};

/// `26353376 = 2^5 · 7^7`, the constant `E·L + H·M`.
pub const BEZOUT_CONSTANT: i64 = 26_353_376;

/// Largest modulus enumerated by [`residue_class_valuation`].
pub const LIFT_BUDGET: u64 = 10_000_000;

/// Builds an [`IntPoly`] from coefficients listed from the top degree down.
fn desc(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_coeffs(&coeffs.iter().rev().copied().collect::<Vec<_>>())
}

/// The fixed polynomials of the family, all in one variable.
#[derive(Debug, Clone)]
pub struct Catalogue {
    /// `a[i]` is the coefficient of `X^i` in `f_t`, as a polynomial in `t`.
    pub a: [IntPoly; 7],
    pub e: IntPoly,
    pub f: IntPoly,
    pub g: IntPoly,
    pub h: IntPoly,
    pub i: IntPoly,
    pub j: IntPoly,
    /// Bezout cofactors: `E·L + H·M = 2^5·7^7`.
    pub l: IntPoly,
    pub m: IntPoly,
    /// Cofactor of `E` in `14^6·Φ_7(N/14)`.
    pub w: IntPoly,
    /// Numerator of `w = N/14`.
    pub n: IntPoly,
    pub phi7: IntPoly,
    /// `E(7X + 2) = 49·ψ(X)`.
    pub psi: IntPoly,
    /// `E(2X) = 8·U(X)`.
    pub u: IntPoly,
    /// `V(X) = E(2X + 1)`.
    pub v: IntPoly,
    /// `2t^4 - 2t^3 + 6t^2 - 3t + 4`, squared in both discriminants.
    pub disc_quartic: IntPoly,
    /// `t^5 + t^4 + t^3 + 2t^2 + t + 1`, squared in both discriminants.
    pub disc_quintic: IntPoly,
}

impl Catalogue {
    /// The shared, immutable standard catalogue.
    pub fn standard() -> &'static Catalogue {
        static CATALOGUE: OnceLock<Catalogue> = OnceLock::new();
        CATALOGUE.get_or_init(Catalogue::build)
    }

    fn build() -> Catalogue {
        let t = IntPoly::x();
        let a6 = -&desc(&[1, 1, 5, 6]);
        let a5 = desc(&[3, 3, 8, 4]).scale(&BigInt::from(3));
        let a4 = desc(&[1, 1, 9, -5, -15, -22, -36, -8]);
        let a3 = -&(&t * &desc(&[1, 5, 12, 24, -6, 2, -20, -16]));
        let a2 = &t.pow(2) * &desc(&[2, 7, 19, 14, 2, 8, -8]);
        let a1 = -&(&t.pow(4) * &desc(&[1, 4, 8, 0, 4]));
        let a0 = t.pow(7);

        let e = desc(&[1, 2, 11, 1, 16, 4, 8]);
        let v = e.compose(&IntPoly::linear(2, 1));
        Catalogue {
            a: [a0, a1, a2, a3, a4, a5, a6],
            f: desc(&[10, 10, 1, 4]),
            g: desc(&[15, 30, -31, 15, -201, -87, -174]),
            h: desc(&[
                6, 30, -133, -504, -3255, -6244, -12033, -8438, 19620, 52892, 136787, 167671,
                179676, 206640, 103680, 82944,
            ]),
            i: desc(&[12, 36, -78, -84, -861, -588, -1155, -1214, -324, -432]),
            j: desc(&[
                5, 20, -66, -162, -1126, -1441, -2534, -1641, 1857, 426, 5574, 3456, 3456,
            ]),
            l: desc(&[
                -150, -492, 5035, 7709, 43169, 6075, -61261, -3409, -53980, 1520256, 1587001,
                -1436918, -5167741, -16768814, -14725412,
            ]),
            m: desc(&[25, 7, 119, -376, 155, 1738]),
            w: desc(&[
                64, 448, 4016, 15104, 71180, 142780, 480245, 258262, 1611259, -1664243, 6281164,
                -9116196, 20556660, -28970654, 33948931, -21216648, 5083933, 7056657, -3702019,
                -2324868, 4160443, 671937, -2012038, 403368, 941192,
            ]),
            n: desc(&[2, 3, 18, -11, 13, 0]),
            phi7: desc(&[1, 1, 1, 1, 1, 1, 1]),
            psi: desc(&[2401, 4802, 4459, 2303, 686, 112, 8]),
            u: desc(&[8, 8, 22, 1, 8, 1, 1]),
            v,
            disc_quartic: desc(&[2, -2, 6, -3, 4]),
            disc_quintic: desc(&[1, 1, 1, 2, 1, 1]),
            e,
        }
    }

    /// The Tschirnhaus shift `c = t^3 + t^2 + 5t + 6 = -a_6(t)`.
    pub fn shift_at(&self, t: i64) -> BigInt {
        -self.a[6].eval_i64(t)
    }

    /// `f_t` for any integer `t`, including the degenerate `t = 0`.
    pub fn f_at(&self, t: i64) -> IntPoly {
        let mut coeffs: Vec<BigInt> = self.a.iter().map(|a| a.eval_i64(t)).collect();
        coeffs.push(BigInt::one());
        IntPoly::new(coeffs)
    }

    /// `f*_t = 7^7·f_t((X + c)/7)`.
    pub fn fstar_at(&self, t: i64) -> IntPoly {
        tschirnhaus(&self.f_at(t), &self.shift_at(t))
    }

    /// The six polynomials whose products with `E` give `h_0..h_5`, paired
    /// with their constant multipliers: `h_i = -mult_i · P_i(t) · E(t)`.
    fn h_factors(&self) -> [(i64, &IntPoly); 6] {
        [
            (1, &self.h),
            (7, &self.j),
            (7, &self.i),
            (7, &self.g),
            (7, &self.f),
            (21, IntPoly::one_ref()),
        ]
    }

    /// Expected `h_i(t)` from the factored forms.
    pub fn h_expected(&self, t: i64) -> [BigInt; 6] {
        let e = self.e.eval_i64(t);
        self.h_factors()
            .map(|(k, p)| -(BigInt::from(k) * p.eval_i64(t) * &e))
    }

    /// `t^22·E^6·Q4^2·Q5^2`, the closed form of `disc(f_t)`.
    pub fn disc_f_closed_form(&self, t: i64) -> BigInt {
        let tb = BigInt::from(t);
        num_traits::pow(tb, 22)
            * num_traits::pow(self.e.eval_i64(t), 6)
            * num_traits::pow(self.disc_quartic.eval_i64(t), 2)
            * num_traits::pow(self.disc_quintic.eval_i64(t), 2)
    }

    /// `7^42·t^22·E^6·Q4^2·Q5^2`, the discriminant of `f*_t`; reduced models
    /// divide it by a power of `m`.
    pub fn disc_g_numerator(&self, t: i64) -> BigInt {
        num_traits::pow(BigInt::from(7), 42) * self.disc_f_closed_form(t)
    }
}

impl IntPoly {
    fn one_ref() -> &'static IntPoly {
        static ONE: OnceLock<IntPoly> = OnceLock::new();
        ONE.get_or_init(IntPoly::one)
    }
}

/// `7^7·f((X + c)/7)` for a monic degree-7 `f`, computed as
/// `Σ a_j·7^(7-j)·(X + c)^j`.
pub fn tschirnhaus(f: &IntPoly, c: &BigInt) -> IntPoly {
    let seven = BigInt::from(7);
    let scaled = IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(j, a)| a * num_traits::pow(seven.clone(), 7 - j))
            .collect(),
    );
    scaled.shift(c)
}

/// `f_t`; `t = 0` is rejected because `f_0 = X^4 (X - 2)^3`.
pub fn defining_polynomial(t: i64) -> Result<IntPoly> {
    if t == 0 {
        return Err(Error::Domain(
            "degenerate parameter t = 0: f_0 = X^4 (X - 2)^3 is reducible".into(),
        ));
    }
    Ok(Catalogue::standard().f_at(t))
}

/// The reduction pipeline for one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepticModel {
    pub t: i64,
    /// `f_t`, monic of degree 7.
    pub f: IntPoly,
    /// Prime certifying irreducibility of `f_t`, `None` when waived.
    pub certificate: Option<u64>,
    /// `c = t^3 + t^2 + 5t + 6`.
    pub shift: BigInt,
    /// `7^7·f_t((X + c)/7)`, no `X^6` term.
    pub fstar: IntPoly,
    /// `h[i]` is the coefficient of `X^i` in `fstar`, `i = 0..=5`.
    pub h: [BigInt; 6],
    /// Largest `m` with `m^(7-i) | h_i` for every `i`.
    pub m: BigUint,
    /// `g_t = fstar(m·X)/m^7`; its coefficients are `k_i = h_i/m^(7-i)`.
    pub g: IntPoly,
}

impl SepticModel {
    /// Builds the model after certifying that `f_t` is irreducible.
    pub fn build(t: i64, fz: &dyn Factorizer) -> Result<SepticModel> {
        let f = defining_polynomial(t)?;
        let cert = certify_irreducible_deg7(&f)?.ok_or_else(|| {
            Error::Domain(format!("no prime certifies irreducibility of f_{t}"))
        })?;
        let mut model = Self::build_with(Catalogue::standard(), t, fz)?;
        model.certificate = Some(cert);
        Ok(model)
    }

    /// Builds the model with the irreducibility certificate explicitly waived.
    pub fn build_waived(t: i64, fz: &dyn Factorizer) -> Result<SepticModel> {
        Self::build_with(Catalogue::standard(), t, fz)
    }

    /// Builds against an arbitrary catalogue (no certificate).
    pub fn build_with(cat: &Catalogue, t: i64, fz: &dyn Factorizer) -> Result<SepticModel> {
        if t == 0 {
            return Err(Error::Domain("degenerate parameter t = 0".into()));
        }
        let f = cat.f_at(t);
        let shift = cat.shift_at(t);
        let fstar = tschirnhaus(&f, &shift);
        if !fstar.coeff(6).is_zero() {
            return Err(Error::Domain(format!("Tschirnhaus image of f_{t} keeps an X^6 term")));
        }
        let h: [BigInt; 6] = std::array::from_fn(|i| fstar.coeff(i));
        if h[5].is_zero() {
            return Err(Error::Domain(format!("h_5 vanishes at t = {t}")));
        }
        let m = reduction_modulus(&h, fz)?;
        let mb = BigInt::from(m.clone());
        let mut k: Vec<BigInt> = Vec::with_capacity(8);
        for (i, hi) in h.iter().enumerate() {
            let d = num_traits::pow(mb.clone(), 7 - i);
            let (q, r) = hi.div_rem(&d);
            debug_assert!(r.is_zero(), "m^{} must divide h_{i}", 7 - i);
            k.push(q);
        }
        k.push(BigInt::zero());
        k.push(BigInt::one());
        Ok(SepticModel {
            t,
            f,
            certificate: None,
            shift,
            fstar,
            h,
            m,
            g: IntPoly::new(k),
        })
    }

    /// `k_i`, the coefficient of `X^i` in `g_t`.
    pub fn k(&self, i: usize) -> BigInt {
        self.g.coeff(i)
    }

    /// `f*(mX)/m^5 = m^2·g_t`, the non-monic normalization whose
    /// discriminant is `7^42·disc(f_t)/m^18`.
    pub fn g_over_m5(&self) -> IntPoly {
        let m = BigInt::from(self.m.clone());
        self.g.scale(&(&m * &m))
    }

    /// True when no prime `q` has `q^(7-i) | k_i` for every `i`.
    pub fn is_reduced(&self, fz: &dyn Factorizer) -> Result<bool> {
        let k: [BigInt; 6] = std::array::from_fn(|i| self.k(i));
        Ok(reduction_modulus(&k, fz)?.is_one())
    }
}

/// `m = ∏ p^(min_i ⌊v_p(h_i)/(7-i)⌋)` over the primes of `h_5`; every prime
/// of `m` divides `h_5` because `m^2 | h_5`.
fn reduction_modulus(h: &[BigInt; 6], fz: &dyn Factorizer) -> Result<BigUint> {
    let fact = fz.factor(&h[5])?;
    if !fact.is_complete() {
        return Err(Error::Resource(format!(
            "could not fully factor h_5 = {}; cofactor {}",
            h[5],
            fact.cofactor()
        )));
    }
    let mut m = BigUint::one();
    for (p, _) in fact.factors() {
        let pb = BigInt::from(p.clone());
        let e = h
            .iter()
            .enumerate()
            .map(|(i, hi)| {
                if hi.is_zero() {
                    u32::MAX
                } else {
                    valuation_by_division(hi, &pb) / (7 - i as u32)
                }
            })
            .min()
            .unwrap_or(0);
        m *= p.pow(e);
    }
    Ok(m)
}

fn valuation_by_division(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() || n.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// First failure found by an identity verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch(pub String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Verification = std::result::Result<(), Mismatch>;

fn fail<T>(msg: String) -> std::result::Result<T, Mismatch> {
    Err(Mismatch(msg))
}

/// Parameter points used to pin down identities of t-degree at most 21.
pub const H_SAMPLE_RANGE: RangeInclusive<i64> = -22..=22;

/// Checks `h_5 = -21E, h_4 = -7FE, h_3 = -7GE, h_2 = -7IE, h_1 = -7JE,
/// h_0 = -HE` at 44 nonzero parameter points. Both sides have t-degree at
/// most 21, so agreement at 22 or more points proves the identity.
pub fn verify_h_factorization(cat: &Catalogue) -> Verification {
    for t in H_SAMPLE_RANGE.filter(|&t| t != 0) {
        let fstar = cat.fstar_at(t);
        if !fstar.coeff(6).is_zero() {
            return fail(format!("t = {t}: X^6 coefficient {} is nonzero", fstar.coeff(6)));
        }
        if fstar.coeff(7) != BigInt::one() {
            return fail(format!("t = {t}: fstar is not monic"));
        }
        let expected = cat.h_expected(t);
        for i in (0..6).rev() {
            if fstar.coeff(i) != expected[i] {
                return fail(format!(
                    "t = {t}, i = {i}: h_{i} = {} but factored form gives {}",
                    fstar.coeff(i),
                    expected[i]
                ));
            }
        }
    }
    Ok(())
}

/// Checks, for each nonzero `t` in `range`, that the resultant-computed
/// discriminant of `f*(mX)/m^5` equals `7^42·E^6·t^22·Q4^2·Q5^2 / m^18`, and
/// that the monic `g_t = f*(mX)/m^7` has discriminant `7^42·(...)/m^42`.
pub fn verify_disc_g(cat: &Catalogue, range: RangeInclusive<i64>, fz: &dyn Factorizer) -> Result<Verification> {
    for t in range.filter(|&t| t != 0) {
        let model = SepticModel::build_with(cat, t, fz)?;
        let numerator = cat.disc_g_numerator(t);
        let m = BigInt::from(model.m.clone());
        for (poly, power, label) in [(model.g_over_m5(), 18, "f*(mX)/m^5"), (model.g.clone(), 42, "g_t")] {
            let divisor = num_traits::pow(m.clone(), power);
            let (closed, rem) = numerator.div_rem(&divisor);
            if !rem.is_zero() {
                return Ok(fail(format!("t = {t}: m^{power} does not divide the closed form")));
            }
            let computed = discriminant(&poly)?;
            if computed != closed {
                return Ok(fail(format!(
                    "t = {t}: disc({label}) = {computed}, closed form / m^{power} = {closed}"
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// Checks `disc(f_t) = t^22·E^6·Q4^2·Q5^2` for each nonzero `t` in `range`.
pub fn verify_disc_f(cat: &Catalogue, range: RangeInclusive<i64>) -> Result<Verification> {
    for t in range.filter(|&t| t != 0) {
        let computed = discriminant(&cat.f_at(t))?;
        let closed = cat.disc_f_closed_form(t);
        if computed != closed {
            return Ok(fail(format!("t = {t}: disc(f_t) = {computed}, closed form = {closed}")));
        }
    }
    Ok(Ok(()))
}

/// `E·L + H·M = 26353376 = 2^5·7^7`.
pub fn verify_bezout(cat: &Catalogue) -> Verification {
    let lhs = &(&cat.e * &cat.l) + &(&cat.h * &cat.m);
    let expected = IntPoly::constant(BEZOUT_CONSTANT);
    if lhs != expected {
        return fail(format!("E·L + H·M = {lhs}, expected {BEZOUT_CONSTANT}"));
    }
    if BigInt::from(BEZOUT_CONSTANT) != BigInt::from(32) * num_traits::pow(BigInt::from(7), 7) {
        return fail("26353376 != 2^5·7^7".into());
    }
    Ok(())
}

/// `Σ_{i=0}^{6} N^i·14^(6-i) = E·W`, i.e. `Φ_7(N/14) = E·W/(2^6·7^6)`.
pub fn verify_cyclotomic_identity(cat: &Catalogue) -> Verification {
    let fourteen = BigInt::from(14);
    let mut lhs = IntPoly::zero();
    let mut n_pow = IntPoly::one();
    for i in 0..=6usize {
        let weight = cat.phi7.coeff(i) * num_traits::pow(fourteen.clone(), 6 - i);
        lhs = &lhs + &n_pow.scale(&weight);
        n_pow = &n_pow * &cat.n;
    }
    let rhs = &cat.e * &cat.w;
    if lhs != rhs {
        let witness = (0..=lhs.deg().max(rhs.deg()))
            .find(|&d| lhs.coeff(d) != rhs.coeff(d))
            .unwrap_or(0);
        return fail(format!(
            "coefficient of x^{witness}: 14^6·Φ_7(w) gives {}, E·W gives {}",
            lhs.coeff(witness),
            rhs.coeff(witness)
        ));
    }
    Ok(())
}

/// `E(7X + 2) = 49·ψ(X)` and `7 ∤ ψ(s)` for `s = 0..6` (hence for all `s`).
pub fn verify_psi_identity(cat: &Catalogue) -> Verification {
    let lhs = cat.e.compose(&IntPoly::linear(7, 2));
    let rhs = cat.psi.scale(&BigInt::from(49));
    if lhs != rhs {
        return fail(format!("E(7X + 2) = {lhs} but 49·ψ = {rhs}"));
    }
    for s in 0..7u64 {
        if cat.psi.eval_mod(s, 7) == 0 {
            return fail(format!("7 divides ψ({s})"));
        }
    }
    Ok(())
}

/// `8·U(X) = E(2X)`, `V(X) = E(2X + 1)` and `U(k)` odd for every `k`.
pub fn verify_block_polynomials(cat: &Catalogue) -> Verification {
    let lhs = cat.u.scale(&BigInt::from(8));
    let rhs = cat.e.compose(&IntPoly::linear(2, 0));
    if lhs != rhs {
        return fail(format!("8·U = {lhs} but E(2X) = {rhs}"));
    }
    let v = cat.e.compose(&IntPoly::linear(2, 1));
    if cat.v != v {
        return fail(format!("V = {} but E(2X + 1) = {v}", cat.v));
    }
    for k in 0..2u64 {
        if cat.u.eval_mod(k, 2) != 1 {
            return fail(format!("U({k}) is even"));
        }
    }
    Ok(())
}

/// The largest `k` such that `q^k | p(x)` for every integer `x ≡ r (mod q)`.
///
/// The bound comes from the valuation at the first member of the class where
/// `p` does not vanish; each level `k` is then confirmed by enumerating all
/// `q^(k-1)` lifts `r + q·m` modulo `q^k`.
pub fn residue_class_valuation(p: &IntPoly, q: u64, r: u64) -> Result<u32> {
    if !is_prime_u64(q) {
        return Err(Error::Domain(format!("{q} is not prime")));
    }
    if r >= q {
        return Err(Error::Domain(format!("residue {r} is not reduced mod {q}")));
    }
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial has infinite valuation".into()));
    }
    let qb = BigInt::from(q);
    let bound = (0..=p.deg() as u64)
        .map(|m| p.eval(&BigInt::from(r + q * m)))
        .find(|v| !v.is_zero())
        .map(|v| valuation_by_division(&v, &qb))
        .expect("a nonzero polynomial cannot vanish at deg + 1 points");

    let mut found = 0;
    for k in 1..=bound {
        let lifts = q
            .checked_pow(k - 1)
            .filter(|&n| n <= LIFT_BUDGET)
            .ok_or_else(|| Error::Resource(format!("{q}^{} lifts exceed the budget", k - 1)))?;
        let modulus = num_traits::pow(BigInt::from(q), k as usize);
        let all_divisible = (0..lifts).all(|m| {
            let x = BigInt::from(r) + BigInt::from(q) * BigInt::from(m);
            p.eval(&x).mod_floor(&modulus).is_zero()
        });
        if !all_divisible {
            break;
        }
        found = k;
    }
    Ok(found)
}

/// Valuations of `(E, F, G, I, J, H)` at 7 on the class `t ≡ 2 (mod 7)`.
pub fn seven_adic_class_table(cat: &Catalogue) -> Result<[(char, u32); 6]> {
    let polys = [('E', &cat.e), ('F', &cat.f), ('G', &cat.g), ('I', &cat.i), ('J', &cat.j), ('H', &cat.h)];
    let mut out = [('E', 0); 6];
    for (slot, (name, p)) in out.iter_mut().zip(polys) {
        *slot = (name, residue_class_valuation(p, 7, 2)?);
    }
    Ok(out)
}

/// Pointwise 7-adic valuations of `(E, F, G, I, J, H)` at a single `t`.
/// A zero value is reported as `None` (infinite valuation).
pub fn seven_adic_pointwise(cat: &Catalogue, t: i64) -> [(char, Option<u32>); 6] {
    let seven = BigInt::from(7);
    [('E', &cat.e), ('F', &cat.f), ('G', &cat.g), ('I', &cat.i), ('J', &cat.j), ('H', &cat.h)].map(
        |(name, p)| {
            let v = p.eval_i64(t);
            (name, (!v.is_zero()).then(|| valuation_by_division(&v, &seven)))
        },
    )
}

/// True iff `gcd(p, p^(k)) = 1` for `k = 1..=order`.
pub fn verify_no_repeated_roots(p: &IntPoly, order: usize) -> Result<bool> {
    if p.deg() < order || p.is_zero() {
        return Err(Error::Domain(format!("degree of {p} is below {order}")));
    }
    for k in 1..=order {
        if !primitive_gcd(p, &p.nth_derivative(k))?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `E(t)` for the standard catalogue.
pub fn e_value(t: i64) -> BigInt {
    Catalogue::standard().e.eval_i64(t)
}

/// True when `E(t) > 0`; used as a sanity gate by callers that treat `E(t)`
/// as a magnitude.
pub fn e_is_positive(t: i64) -> bool {
    e_value(t).is_positive()
}

/// `E(t)` reduced mod a small `m`, for residue sweeps.
pub fn e_mod(t: i64, m: u64) -> u64 {
    let tm = t.rem_euclid(m as i64).to_u64().expect("nonnegative");
    Catalogue::standard().e.eval_mod(tm, m)
}
