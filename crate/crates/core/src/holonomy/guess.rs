use num_bigint::{BigInt, BigUint};

use super::nullspace::integer_nullspace;
use super::poly::PolyInt;
use super::recurrence::{verify, PRecurrence};
use super::HolonomyError;

/// Default held-out tail: a quarter of the terms, at least four.
pub fn default_holdout(len: usize) -> usize {
    len.div_ceil(4).max(4)
}

/// Terms needed so that every pair within the bounds gets at least as many
/// equations as unknowns.
pub fn required_terms(max_order: usize, max_degree: usize, holdout: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + holdout + max_order
}

/// `(order, degree)` pairs in search order: by `(R+1)(D+1)`, then by `R`.
pub fn search_order(max_order: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..=max_order)
        .flat_map(|r| (0..=max_degree).map(move |d| (r, d)))
        .collect();
    pairs.sort_by_key(|&(r, d)| ((r + 1) * (d + 1), r));
    pairs
}

/// Searches for a linear recurrence with polynomial coefficients.
///
/// For each `(R, D)` in [`search_order`], builds the homogeneous system
/// `Σ_{i,j} c_{ij} n^j a(n+i) = 0` from every window that lies inside the
/// training prefix (all terms but the last `holdout`), solves it exactly, and
/// returns the first nullspace candidate that also satisfies every window of
/// the full list. Pairs with fewer training windows than unknowns are
/// skipped; see [`required_terms`] for the count that rules this out.
/// `Ok(None)` means nothing was found within the bounds.
pub fn guess(
    terms: &[BigUint],
    max_order: usize,
    max_degree: usize,
    holdout: usize,
) -> Result<Option<PRecurrence>, HolonomyError> {
    let need = required_terms(1, 0, holdout);
    if terms.len() < need || max_order == 0 || holdout == 0 {
        return Err(HolonomyError::InsufficientTerms {
            have: terms.len(),
            need,
        });
    }
    let train = &terms[..terms.len() - holdout];
    let values: Vec<BigInt> = train.iter().cloned().map(BigInt::from).collect();
    for (order, degree) in search_order(max_order, max_degree) {
        if train.len() < (order + 1) * (degree + 1) + order {
            continue;
        }
        if let Some(rec) = try_pair(&values, terms, order, degree) {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

fn try_pair(train: &[BigInt], all: &[BigUint], order: usize, degree: usize) -> Option<PRecurrence> {
    let cols = (order + 1) * (degree + 1);
    let windows = train.len() - order;
    let matrix: Vec<Vec<BigInt>> = (0..windows)
        .map(|n| {
            let powers: Vec<BigInt> = (0..=degree as u32).map(|j| BigInt::from(n).pow(j)).collect();
            (0..=order)
                .flat_map(|i| powers.iter().map(move |p| p * &train[n + i]))
                .collect()
        })
        .collect();
    integer_nullspace(matrix, cols).into_iter().find_map(|v| {
        let polys = v.chunks(degree + 1).map(|c| PolyInt::new(c.to_vec())).collect();
        let rec = PRecurrence::new(polys, 0).ok()?;
        verify(&rec, all).then_some(rec)
    })
}
