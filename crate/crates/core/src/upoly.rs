//! Dense univariate integer polynomials, cyclotomic polynomials, and the
//! Hilbert-series quotient test for degree sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numth::divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial division is not exact over the integers")]
pub struct DivisionFailure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("degree sequence must be nonempty with all entries at least 1")]
    BadDegrees,
    #[error("quotient is not an integer polynomial")]
    NotIntegral,
}

/// Integer polynomial in `t`, coefficient `k` of `t^k` at index `k`.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 - t^d`
    pub fn one_minus_power(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] += 1;
        c[d] -= 1;
        Self::new(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers, e.g. `1 + t - 2*t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntPoly::new(out)
}

/// `num / den` when the quotient is an integer polynomial with zero remainder.
///
/// Long division runs over the rationals; the quotient is then checked for
/// integrality.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn poly_exact_div(num: &IntPoly, den: &IntPoly) -> Result<IntPoly, DivisionFailure> {
    assert!(!den.is_zero(), "division by the zero polynomial");
    if num.is_zero() {
        return Ok(IntPoly::zero());
    }
    let dn = den.coeffs.len() - 1;
    if num.coeffs.len() - 1 < dn {
        return Err(DivisionFailure);
    }
    let mut rem: Vec<BigRational> = num
        .coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let lead = BigRational::from_integer(den.coeffs[dn].clone());
    let qlen = rem.len() - dn;
    let mut quot = vec![BigRational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = &rem[k + dn] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.coeffs.iter().enumerate() {
            rem[k + j] -= &c * BigRational::from_integer(dc.clone());
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(DivisionFailure);
    }
    quot.into_iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.to_integer())
                .ok_or(DivisionFailure)
        })
        .collect::<Result<Vec<_>, _>>()
        .map(IntPoly::new)
}

fn cyclotomic_table() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial `Φ_d`, memoized.
///
/// Computed as `(t^d - 1) / ∏_{e | d, e < d} Φ_e`. Concurrent first calls may
/// recompute the same entry; the results are identical.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn cyclotomic(d: u64) -> Arc<IntPoly> {
    assert!(d > 0, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_table().read().expect("poisoned").get(&d) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::one();
    let mut num = IntPoly::new(num);
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        num = poly_exact_div(&num, &cyclotomic(e)).expect("t^d - 1 is divisible by Φ_e");
    }
    let phi = Arc::new(num);
    cyclotomic_table()
        .write()
        .expect("poisoned")
        .entry(d)
        .or_insert_with(|| Arc::clone(&phi));
    phi
}

/// Result of dividing `∏(1 - t^{d_i})` by `∏_{i=1}^{n}(1 - t^i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertQuotient {
    pub poly: IntPoly,
    /// Necessary for regularity but not sufficient; advisory only.
    pub nonnegative: bool,
    /// Equals `∏ d_i / n!` when the division is exact.
    pub coeff_sum: BigInt,
}

pub fn hilbert_quotient(n: usize, degrees: &[u64]) -> Result<HilbertQuotient, HilbertError> {
    if n == 0 || degrees.len() != n || degrees.contains(&0) {
        return Err(HilbertError::BadDegrees);
    }
    let num = degrees.iter().fold(IntPoly::one(), |acc, &d| {
        poly_mul(&acc, &IntPoly::one_minus_power(d as usize))
    });
    let den = (1..=n).fold(IntPoly::one(), |acc, i| {
        poly_mul(&acc, &IntPoly::one_minus_power(i))
    });
    let poly = poly_exact_div(&num, &den).map_err(|_| HilbertError::NotIntegral)?;
    Ok(HilbertQuotient {
        nonnegative: poly.is_nonnegative(),
        coeff_sum: poly.coeff_sum(),
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly_mul(&p(&[1, -1]), &p(&[1, 1])), p(&[1, 0, -1]));
        let q = p(&[3, 0, -2, 7]);
        assert_eq!(poly_mul(&q, &IntPoly::one()), q);
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[1, 1])), p(&[1, 2, 1]));
        assert!(poly_mul(&q, &IntPoly::zero()).is_zero());
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(
            poly_exact_div(&p(&[1, 0, -1]), &p(&[1, -1])),
            Ok(p(&[1, 1]))
        );
        assert_eq!(
            poly_exact_div(&p(&[1, 0, 0, -1]), &p(&[1, 0, -1])),
            Err(DivisionFailure)
        );
        let den = poly_mul(&poly_mul(&p(&[1, -1]), &p(&[1, 0, -1])), &p(&[1, 0, 0, -1]));
        assert_eq!(
            poly_exact_div(&IntPoly::one_minus_power(6), &den),
            Err(DivisionFailure)
        );
        // non-integral quotient with zero remainder
        assert_eq!(
            poly_exact_div(&p(&[1, 1]), &p(&[2, 2])),
            Err(DivisionFailure)
        );
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic(2), p(&[1, 1]));
        assert_eq!(*cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // first cyclotomic with a coefficient of absolute value 2
        assert!(cyclotomic(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for d in 1..=105u64 {
            let prod = divisors(d)
                .into_iter()
                .fold(IntPoly::one(), |acc, e| poly_mul(&acc, &cyclotomic(e)));
            let mut expect = vec![0i64; d as usize + 1];
            expect[0] = -1;
            expect[d as usize] = 1;
            assert_eq!(prod, p(&expect), "d = {d}");
        }
    }

    #[test]
    fn hilbert_examples() {
        let q = hilbert_quotient(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(q.poly, IntPoly::one());
        let q = hilbert_quotient(4, &[2, 5, 2, 12]).unwrap();
        assert_eq!(q.poly, p(&[1, 1, 0, 1, 2, 0, 0, 2, 1, 0, 1, 1]));
        assert!(q.nonnegative);
        assert_eq!(q.coeff_sum, BigInt::from(2 * 5 * 2 * 12 / 24));
        let q = hilbert_quotient(2, &[2, 2]).unwrap();
        assert_eq!(q.poly, p(&[1, 1]));
        assert_eq!(
            hilbert_quotient(3, &[1, 3, 5]),
            Err(HilbertError::NotIntegral)
        );
        assert_eq!(hilbert_quotient(2, &[1]), Err(HilbertError::BadDegrees));
        assert_eq!(hilbert_quotient(2, &[0, 2]), Err(HilbertError::BadDegrees));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 1, 0, 1, 2]).to_string(), "1 + t + t^3 + 2*t^4");
        assert_eq!(p(&[0, -1, 0, 3]).to_string(), "-t + 3*t^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
