//! Polynomial gcd and resultants over the integers.
//!
//! Two independent resultant routes are provided: Bareiss elimination on
//! the Sylvester matrix, and the subresultant remainder sequence. The
//! discriminant uses the former; the latter exists to cross-check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Generator of `gcd(p, q)` in `Q[X]`, normalized to be primitive with a
/// positive leading coefficient. Computed by the primitive remainder sequence.
pub fn primitive_gcd(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    if a.is_constant() {
        return Ok(IntPoly::one());
    }
    Ok(a.primitive_part())
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), size (m+n)².
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Vec<Vec<BigInt>> {
    let (m, n) = (p.deg(), q.deg());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, copies) in [(p, n), (q, m)] {
        for shift in 0..copies {
            let mut row = vec![BigInt::zero(); size];
            for (i, c) in poly.coeffs().iter().rev().enumerate() {
                row[shift + i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant via the Sylvester determinant.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    Ok(bareiss_determinant(sylvester_matrix(p, q)))
}

/// Resultant via the subresultant remainder sequence.
pub fn resultant_subresultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
    }
    if b.is_constant() {
        return Ok(sign * num_traits::pow(b.leading(), a.deg()));
    }
    let (ca, cb) = (a.content(), b.content());
    let scale = num_traits::pow(ca.clone(), b.deg()) * num_traits::pow(cb.clone(), a.deg());
    a = a.div_exact_scalar(&ca).expect("content divides");
    b = b.div_exact_scalar(&cb).expect("content divides");

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact_scalar(&divisor).expect("subresultant division is exact");
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_zero() {
            return Ok(BigInt::zero());
        }
        if b.is_constant() {
            let da = a.deg();
            let last = if da == 0 {
                BigInt::one()
            } else {
                num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1)
            };
            return Ok(sign * scale * last);
        }
    }
}

fn discriminant_with(p: &IntPoly, res: impl Fn(&IntPoly, &IntPoly) -> Result<BigInt>) -> Result<BigInt> {
    let n = match p.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::Domain(format!("discriminant needs degree >= 2, got {p}"))),
    };
    let r = res(p, &p.derivative())?;
    let (d, rem) = r.div_rem(&p.leading());
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// `(-1)^(n(n-1)/2)·Res(p, p')/lc(p)`, resultant by Sylvester elimination.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    discriminant_with(p, resultant)
}

/// Same as [`discriminant`] through the subresultant sequence.
pub fn discriminant_subresultant(p: &IntPoly) -> Result<BigInt> {
    discriminant_with(p, resultant_subresultant)
}

/// True when `p` has no repeated complex root, i.e. `gcd(p, p') = 1`.
pub fn is_squarefree(p: &IntPoly) -> bool {
    !p.is_zero() && primitive_gcd(p, &p.derivative()).is_ok_and(|g| g.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(primitive_gcd(&p("X^2 - 1"), &p("X - 1")).unwrap(), p("X - 1"));
        assert_eq!(primitive_gcd(&p("2*X^2 - 2"), &p("-3*X - 3")).unwrap(), p("X + 1"));
        assert_eq!(primitive_gcd(&p("X^2 + 1"), &IntPoly::zero()).unwrap(), p("X^2 + 1"));
        assert_eq!(primitive_gcd(&p("6"), &p("4")).unwrap(), IntPoly::one());
        assert!(primitive_gcd(&IntPoly::zero(), &IntPoly::zero()).is_err());
    }

    #[test]
    fn resultant_examples() {
        let r = |a: &str, b: &str| resultant(&p(a), &p(b)).unwrap();
        // Res(X - a, X - b) = a - b.
        assert_eq!(r("X - 2", "X - 5"), BigInt::from(-3));
        assert_eq!(r("X - 5", "X - 2"), BigInt::from(3));
        assert_eq!(r("X^2 + 1", "X"), BigInt::from(1));
        assert_eq!(r("X^2 - 2", "X^2 - 2"), BigInt::zero());
        assert_eq!(r("3", "X^2 + 5"), BigInt::from(9));
        assert!(resultant(&IntPoly::zero(), &p("X")).is_err());
    }

    #[test]
    fn subresultant_examples() {
        let r = |a: &str, b: &str| resultant_subresultant(&p(a), &p(b)).unwrap();
        assert_eq!(r("X - 2", "X - 5"), BigInt::from(-3));
        assert_eq!(r("X^2 + 1", "X"), BigInt::from(1));
        assert_eq!(r("X^2 - 2", "X^2 - 2"), BigInt::zero());
        assert_eq!(r("X", "X^2 + 1"), BigInt::from(1));
        assert_eq!(r("2*X^3 + 4*X", "6*X^2 - 9"), resultant(&p("2*X^3 + 4*X"), &p("6*X^2 - 9")).unwrap());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("X^2 - 1")).unwrap(), BigInt::from(4));
        assert_eq!(discriminant(&p("X^3 - 1")).unwrap(), BigInt::from(-27));
        assert_eq!(discriminant(&p("3*X^2 + 5*X + 1")).unwrap(), BigInt::from(13));
        assert!(discriminant(&p("X + 1")).is_err());
        assert_eq!(discriminant_subresultant(&p("X^3 - 1")).unwrap(), BigInt::from(-27));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(&p("X^2 - 1")));
        assert!(!is_squarefree(&p("X^3 - 3*X + 2")));
    }
}
