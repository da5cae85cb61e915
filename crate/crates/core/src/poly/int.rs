use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with integer coefficients, stored by
/// ascending degree. The zero polynomial has no coefficients; otherwise the
/// last coefficient is nonzero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds from small coefficients, ascending degree.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::from_coeffs(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·X^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    /// `a·X + b`.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(vec![b.into(), a.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// `self(x) mod m` in `[0, m)`, for `m >= 1`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m128 = m as u128;
        let reduced = self.reduced_coeffs(m);
        let x = (x % m) as u128;
        reduced
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x + c as u128) % m128) as u64
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduced_coeffs(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&mb).to_u64().expect("residue fits in u64"))
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`; `None` if any is not divisible.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// `self(q(X))`.
    pub fn compose(&self, q: &IntPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * q) + &IntPoly::constant(c.clone()))
    }

    /// `self(X + a)`.
    pub fn shift(&self, a: &BigInt) -> Self {
        // Taylor shift by repeated synthetic division.
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `self(k·X)`.
    pub fn scale_variable(&self, k: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= k;
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c).expect("content divides every coefficient")
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1)·a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut steps = self.deg() - db + 1;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * bc;
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        // Bring the multiplier up to the full lc(b)^(deg a - deg b + 1).
        let fix = num_traits::pow(lb, steps);
        Self::new(r.into_iter().map(|c| c * &fix).collect())
    }

    /// True if `b` divides `self` over the rationals (pseudo-remainder zero).
    pub fn is_divisible_by(&self, b: &IntPoly) -> bool {
        self.pseudo_rem(b).is_zero()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// `c0 + c1*X + ... + cn*X^n`, zero terms omitted, negative terms
    /// written with a minus sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*X")?,
                _ => write!(f, "{mag}*X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Accepts sums of terms `c`, `c*X`, `c*X^n`, `X^n`, `-X`, in any order,
    /// with `X`, `x`, `t`, `k` or `s` as the variable.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Domain("empty polynomial".into()));
        }
        let bad = |t: &str| Error::Domain(format!("malformed polynomial term {t:?}"));
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'*' | b'+' | b'-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let var_at = body.find(['X', 'x', 't', 'k', 's']);
            let (coef, degree) = match var_at {
                None => (body.parse::<BigInt>().map_err(|_| bad(term))?, 0usize),
                Some(pos) => {
                    let coef = match &body[..pos] {
                        "" => BigInt::one(),
                        c => c
                            .strip_suffix('*')
                            .ok_or_else(|| bad(term))?
                            .parse::<BigInt>()
                            .map_err(|_| bad(term))?,
                    };
                    let degree = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .ok_or_else(|| bad(term))?
                            .parse::<usize>()
                            .map_err(|_| bad(term))?,
                    };
                    (coef, degree)
                }
            };
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += coef * sign;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;

            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The ring operations as a single tagged entry point, for callers (the CLI,
/// table-driven tests) that select the operation at runtime.
#[derive(Debug, Clone)]
pub enum PolyOp {
    Add(IntPoly),
    Sub(IntPoly),
    Mul(IntPoly),
    Scale(BigInt),
    /// Compose with `X + a`.
    Shift(BigInt),
}

pub fn poly_arith(p: &IntPoly, op: &PolyOp) -> IntPoly {
    match op {
        PolyOp::Add(q) => p + q,
        PolyOp::Sub(q) => p - q,
        PolyOp::Mul(q) => p * q,
        PolyOp::Scale(k) => p.scale(k),
        PolyOp::Shift(a) => p.shift(a),
    }
}
