//! Exact integer nullspace via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Basis of `{x : A x = 0}` for an `rows × cols` integer matrix, each vector
/// scaled to coprime integers with its last nonzero entry positive.
///
/// One basis vector per non-pivot column, in increasing column order; the
/// free variable for that column is set to one and the others to zero.
pub fn integer_nullspace(mut matrix: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let rows = matrix.len();
    debug_assert!(matrix.iter().all(|row| row.len() == cols));
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !matrix[i][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, p);
        let (top, rest) = matrix.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in (col + 1)..cols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss step must divide exactly");
                row[j] = q;
            }
        }
        prev = pivot;
        pivots.push(col);
        rank += 1;
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let row = &matrix[k];
                let mut s = BigRational::zero();
                for j in (pc + 1)..cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += BigRational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / BigRational::from_integer(row[pc].clone());
            }
            primitive(&x)
        })
        .collect()
}

/// Clears denominators and divides out the content; last nonzero entry made
/// positive.
fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = x
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    normalize_content(&mut ints);
    ints
}

pub(crate) fn normalize_content(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return;
    }
    let flip = v
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    for c in v.iter_mut() {
        *c = &*c / &g;
        if flip {
            *c = -&*c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn apply(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rank over the rationals by plain Gauss-Jordan, independent of Bareiss.
    fn rational_rank(a: &[Vec<BigInt>], cols: usize) -> usize {
        let mut m: Vec<Vec<BigRational>> = a
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            let piv = m[rank][c].clone();
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &piv;
                    let pivot_row = m[rank].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn known_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = integer_nullspace(a.clone(), 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(apply(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = mat(&[&[2, 1], &[1, 3], &[5, 5]]);
        assert!(integer_nullspace(a, 2).is_empty());
    }

    #[test]
    fn vectors_are_primitive() {
        let a = mat(&[&[4, -6]]);
        assert_eq!(integer_nullspace(a, 2), vec![vec![BigInt::from(3), BigInt::from(2)]]);
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate_and_dimension_matches(
            entries in proptest::collection::vec(-4i64..5, 20),
            rows in 1usize..5,
        ) {
            let cols = 4;
            let a: Vec<Vec<BigInt>> = entries
                .chunks(cols)
                .take(rows)
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let basis = integer_nullspace(a.clone(), cols);
            prop_assert_eq!(basis.len(), cols - rational_rank(&a, cols));
            for v in &basis {
                prop_assert!(apply(&a, v).iter().all(Zero::is_zero));
                prop_assert!(v.iter().any(|c| !c.is_zero()));
            }
        }
    }
}
