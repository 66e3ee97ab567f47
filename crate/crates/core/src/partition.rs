//! Integer partitions, conjugation, hook lengths and standard Young tableau
//! counts.
//!
//! A [`Partition`] is stored in canonical form: weakly decreasing positive
//! parts with no trailing zeros. Code that reasons about a shape padded to a
//! fixed number of rows uses [`Partition::part`], which reads zero past the
//! last stored row.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::BigCount;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("zero part at index {index} is followed by a positive part")]
    InteriorZero { index: usize },
}

/// A weakly decreasing list of positive integers.
///
/// The derived ordering is lexicographic on the stored parts. Enumeration and
/// layer tables present partitions in *reverse* lexicographic order, i.e.
/// `(3)` before `(2, 1)` before `(1, 1, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition, the unique partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from its parts. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(PartitionError::InteriorZero { index });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_canonical(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The transposed diagram: `λ′_j = #{i : λ_i ≥ j}`.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let mut conj = vec![0usize; width];
        for &row in &self.parts {
            for c in conj.iter_mut().take(row) {
                *c += 1;
            }
        }
        Partition::from_canonical(conj)
    }

    /// Hook lengths row by row, `h(i, j) = λ_i − j + λ′_j − i − 1` (0-based).
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + conj.part(j) - i - 1).collect())
            .collect()
    }

    /// Number of standard Young tableaux of this shape, by the hook-length
    /// formula with a single exact division.
    pub fn syt_count(&self) -> BigCount {
        syt_count(self)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `f_λ = |λ|! / Π h(c)`.
///
/// # Panics
///
/// If the hook product does not divide the factorial, which would mean the
/// hook lengths are wrong.
pub fn syt_count(lambda: &Partition) -> BigCount {
    let mut hooks = BigUint::one();
    for row in lambda.hook_lengths() {
        for h in row {
            hooks *= h;
        }
    }
    let (q, rem) = factorial(lambda.size()).div_rem(&hooks);
    assert!(rem.is_zero(), "hook product does not divide |λ|! for {lambda}");
    q
}

/// True iff `λ/μ` is a horizontal strip: `μ ⊆ λ` and `λ_{i+1} ≤ μ_i` for all
/// rows, so no two cells of the skew shape share a column.
pub fn is_horizontal_strip(mu: &Partition, lambda: &Partition) -> bool {
    if mu.len() > lambda.len() {
        return false;
    }
    (0..lambda.len()).all(|i| mu.part(i) <= lambda.part(i) && lambda.part(i + 1) <= mu.part(i))
}

/// Every partition of `total` with at most `max_len` parts, in reverse
/// lexicographic order.
pub fn partitions_upto_length(total: usize, max_len: usize) -> PartitionsUptoLength {
    PartitionsUptoLength::new(total, max_len)
}

/// Iterator behind [`partitions_upto_length`].
#[derive(Debug, Clone)]
pub struct PartitionsUptoLength {
    current: Option<Vec<usize>>,
    max_len: usize,
}

impl PartitionsUptoLength {
    fn new(total: usize, max_len: usize) -> Self {
        let current = if total == 0 {
            Some(Vec::new())
        } else if max_len == 0 {
            None
        } else {
            Some(vec![total])
        };
        PartitionsUptoLength { current, max_len }
    }

    /// Successor in reverse-lex order subject to the length cap. Scans for the
    /// rightmost part that can be decremented while the greedy refill of the
    /// tail still fits in `max_len` rows.
    fn successor(&self, cur: &[usize]) -> Option<Vec<usize>> {
        let mut tail = 0usize;
        for i in (0..cur.len()).rev() {
            if cur[i] > 1 {
                let v = cur[i] - 1;
                let rem = tail + 1;
                let needed = rem.div_ceil(v);
                if i + 1 + needed <= self.max_len {
                    let mut next = Vec::with_capacity(i + 1 + needed);
                    next.extend_from_slice(&cur[..i]);
                    next.push(v);
                    next.extend(std::iter::repeat_n(v, rem / v));
                    if !rem.is_multiple_of(v) {
                        next.push(rem % v);
                    }
                    return Some(next);
                }
            }
            tail += cur[i];
        }
        None
    }
}

impl Iterator for PartitionsUptoLength {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = self.successor(&cur);
        Some(Partition::from_canonical(cur))
    }
}
