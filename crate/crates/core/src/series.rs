//! Truncated power series over a generic coefficient ring, the modified
//! Bessel series `I_ν(2x)`, and determinants of series matrices.

use std::collections::HashMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::partition::factorial;

/// Coefficient ring for [`TruncSeries`].
pub trait SeriesScalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// The value `num / den`; `den` is nonzero.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;
}

impl SeriesScalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
}

impl SeriesScalar for f64 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        // exact rational first so huge factorials do not overflow to inf/inf
        BigRational::new(num.clone(), den.clone()).to_f64().unwrap_or(f64::NAN)
    }
}

impl SeriesScalar for f32 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone()).to_f32().unwrap_or(f32::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("matrix must be square, row {row} has {len} entries for {dim} rows")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("entry ({row},{col}) is truncated at degree {found}, expected {expected}")]
    TruncationMismatch { row: usize, col: usize, found: usize, expected: usize },
    #[error("determinant of an empty matrix has no truncation degree")]
    Empty,
    #[error("dimension {0} exceeds the supported maximum of 20")]
    TooLarge(usize),
}

/// Power series known modulo `x^{T+1}`. Coefficients above `T` are not
/// represented; binary operations truncate to the smaller `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: SeriesScalar> TruncSeries<T> {
    /// Keeps coefficients `0..=truncation`, padding with zeros.
    pub fn new(mut coeffs: Vec<T>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, T::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        TruncSeries::new(Vec::new(), truncation)
    }

    pub fn one(truncation: usize) -> Self {
        TruncSeries::new(vec![T::one()], truncation)
    }

    /// `c · x^k` (zero when `k` exceeds the truncation).
    pub fn monomial(c: T, k: usize, truncation: usize) -> Self {
        let mut s = TruncSeries::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl<T: SeriesScalar> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn add(self, rhs: Self) -> TruncSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: SeriesScalar> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn sub(self, rhs: Self) -> TruncSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: SeriesScalar> Neg for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn neg(self) -> TruncSeries<T> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<T: SeriesScalar> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn mul(self, rhs: Self) -> TruncSeries<T> {
        let t = self.truncation().min(rhs.truncation());
        let mut out = vec![T::zero(); t + 1];
        for (i, a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(t + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

/// `I_ν(2x) = Σ_j x^{2j+ν} / (j! (j+ν)!)` truncated at degree `truncation`.
pub fn bessel_i_2x<T: SeriesScalar>(nu: usize, truncation: usize) -> TruncSeries<T> {
    let mut s = TruncSeries::zero(truncation);
    let one = BigInt::one();
    let mut j = 0;
    while 2 * j + nu <= truncation {
        let den = BigInt::from(factorial(j) * factorial(j + nu));
        s.coeffs[2 * j + nu] = T::from_ratio(&one, &den);
        j += 1;
    }
    s
}

/// The `k × k` matrix `(I_{|i−j|}(2x))`.
pub fn bessel_matrix<T: SeriesScalar>(k: usize, truncation: usize) -> Vec<Vec<TruncSeries<T>>> {
    let entries: Vec<TruncSeries<T>> = (0..k).map(|nu| bessel_i_2x(nu, truncation)).collect();
    (0..k)
        .map(|i| (0..k).map(|j| entries[i.abs_diff(j)].clone()).collect())
        .collect()
}

/// Determinant modulo `x^{T+1}` by Laplace expansion along rows, memoized on
/// the set of columns still available.
///
/// Uses no division, so entries with zero constant term are fine.
pub fn series_det<T: SeriesScalar>(matrix: &[Vec<TruncSeries<T>>]) -> Result<TruncSeries<T>, SeriesError> {
    let k = matrix.len();
    let t = matrix
        .first()
        .and_then(|row| row.first())
        .map(TruncSeries::truncation)
        .ok_or(SeriesError::Empty)?;
    if k > 20 {
        return Err(SeriesError::TooLarge(k));
    }
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != k {
            return Err(SeriesError::NotSquare { row, len: entries.len(), dim: k });
        }
        for (col, e) in entries.iter().enumerate() {
            if e.truncation() != t {
                return Err(SeriesError::TruncationMismatch {
                    row,
                    col,
                    found: e.truncation(),
                    expected: t,
                });
            }
        }
    }

    // minors[mask] = det of the last popcount(mask) rows restricted to the
    // columns in mask
    let mut minors: HashMap<u32, TruncSeries<T>> = HashMap::new();
    minors.insert(0, TruncSeries::one(t));
    let full: u32 = (1u32 << k) - 1;
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); k + 1];
    for mask in 0..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=k {
        let row = k - size;
        for &mask in &by_size[size] {
            let mut acc = TruncSeries::zero(t);
            let mut sign_positive = true;
            for col in 0..k {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &matrix[row][col];
                let rest = &minors[&(mask & !(1 << col))];
                if !entry.is_zero() && !rest.is_zero() {
                    let term = entry * rest;
                    acc = if sign_positive { &acc + &term } else { &acc - &term };
                }
                sign_positive = !sign_positive;
            }
            minors.insert(mask, acc);
        }
        for &mask in &by_size[size - 1] {
            minors.remove(&mask);
        }
    }
    Ok(minors.remove(&full).expect("full minor computed"))
}
