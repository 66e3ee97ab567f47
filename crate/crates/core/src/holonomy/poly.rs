use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer polynomial in `n`, coefficients in ascending powers. Trailing
/// zeros are stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyInt {
    coeffs: Vec<BigInt>,
}

impl PolyInt {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyInt { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        PolyInt::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyInt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `n^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, n: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_usize(&self, n: usize) -> BigInt {
        self.eval(&BigInt::from(n))
    }
}

impl fmt::Debug for PolyInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable form, highest power first: `4n+2`, `n^2-3`, `-1`.
impl fmt::Display for PolyInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let unit = mag == BigInt::from(1);
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("n")?,
                1 => write!(f, "{mag}n")?,
                _ if unit => write!(f, "n^{k}")?,
                _ => write!(f, "{mag}n^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
