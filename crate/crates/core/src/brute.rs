//! Direct enumeration of multiset words, used as ground truth for the RSK
//! sum in [`crate::tableau`].

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::partition::factorial;
use crate::BigCount;

/// Letters are `1..=n`.
pub type Word = Vec<u32>;

/// Multiset permutation count above which [`brute_count`] is considered
/// expensive. Callers decide whether to warn or refuse.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Length of the longest strictly increasing subsequence (patience sorting
/// with strict comparison).
pub fn longest_strict_increase(word: &[u32]) -> usize {
    let mut tails: Vec<u32> = Vec::with_capacity(word.len());
    for &x in word {
        let pos = tails.partition_point(|&t| t < x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

pub fn longest_strict_decrease(word: &[u32]) -> usize {
    let flipped: Vec<u32> = word.iter().map(|&x| u32::MAX - x).collect();
    longest_strict_increase(&flipped)
}

/// `(rn)! / (r!)^n`, the number of words on `{1^r, …, n^r}`.
pub fn multiset_permutation_count(r: usize, n: usize) -> BigUint {
    factorial(r * n) / factorial(r).pow(n as u32)
}

pub fn exceeds_budget(r: usize, n: usize, budget: u64) -> bool {
    multiset_permutation_count(r, n) > BigUint::from(budget)
}

/// Every word on `{1^r, …, n^r}` exactly once, in lexicographic order.
pub fn enumerate_words(r: usize, n: usize) -> MultisetPermutations {
    let first: Word = (1..=n as u32).flat_map(|l| std::iter::repeat_n(l, r)).collect();
    MultisetPermutations { next: Some(first) }
}

#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    next: Option<Word>,
}

impl Iterator for MultisetPermutations {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // standard next-permutation; skips duplicates because of the `<`
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let pivot = i - 1;
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[pivot]).unwrap();
            succ.swap(pivot, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(current)
    }
}

struct Search {
    d: usize,
    remaining: Vec<usize>,
    tails: Vec<u32>,
    left: usize,
}

impl Search {
    /// Appends `letter`, returning the undo record `(position, previous)`.
    fn push(&mut self, letter: u32) -> (usize, Option<u32>) {
        let pos = self.tails.partition_point(|&t| t < letter);
        let prev = if pos == self.tails.len() {
            self.tails.push(letter);
            None
        } else {
            Some(std::mem::replace(&mut self.tails[pos], letter))
        };
        (pos, prev)
    }

    fn pop(&mut self, (pos, prev): (usize, Option<u32>)) {
        match prev {
            Some(v) => self.tails[pos] = v,
            None => {
                self.tails.pop();
            }
        }
    }

    fn count(&mut self) -> u64 {
        if self.left == 0 {
            return 1;
        }
        let mut total = 0;
        for idx in 0..self.remaining.len() {
            if self.remaining[idx] == 0 {
                continue;
            }
            let undo = self.push(idx as u32 + 1);
            if self.tails.len() < self.d {
                self.remaining[idx] -= 1;
                self.left -= 1;
                total += self.count();
                self.left += 1;
                self.remaining[idx] += 1;
            }
            self.pop(undo);
        }
        total
    }
}

/// Number of words on `{1^r, …, n^r}` whose longest strictly increasing
/// subsequence is shorter than `d`.
///
/// Depth-first over prefixes in lexicographic order, keeping the patience
/// tails incrementally and cutting any prefix whose tails already reach `d`.
/// First-letter branches run in parallel. Cost grows with
/// [`multiset_permutation_count`]; see [`exceeds_budget`].
///
/// # Panics
///
/// If `d < 2` or `r == 0`.
pub fn brute_count(d: usize, r: usize, n: usize) -> BigCount {
    assert!(d >= 2, "pattern length d must be at least 2, got {d}");
    assert!(r >= 1, "multiplicity r must be positive");
    if n == 0 {
        return BigCount::from(1u32);
    }
    let total: u64 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut search = Search {
                d,
                remaining: vec![r; n],
                tails: Vec::with_capacity(d),
                left: r * n,
            };
            let undo = search.push(first as u32 + 1);
            if search.tails.len() >= d {
                return 0;
            }
            search.remaining[first] -= 1;
            search.left -= 1;
            let count = search.count();
            search.pop(undo);
            count
        })
        .sum();
    BigCount::from(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lis_examples() {
        assert_eq!(longest_strict_increase(&[1, 1, 2, 2]), 2);
        assert_eq!(longest_strict_increase(&[3, 2, 1]), 1);
        assert_eq!(longest_strict_increase(&[1, 2, 1, 3]), 3);
        assert_eq!(longest_strict_increase(&[]), 0);
    }

    #[test]
    fn enumerate_examples() {
        let two: Vec<_> = enumerate_words(1, 2).collect();
        assert_eq!(two, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(enumerate_words(2, 2).count(), 6);
        let three: Vec<_> = enumerate_words(1, 3).collect();
        assert_eq!(three.len(), 6);
        assert_eq!(three[0], vec![1, 2, 3]);
        assert_eq!(enumerate_words(3, 0).collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        for (r, n) in [(1, 5), (2, 3), (3, 2), (2, 4)] {
            let words: Vec<_> = enumerate_words(r, n).collect();
            assert!(words.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(BigUint::from(words.len()), multiset_permutation_count(r, n));
        }
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_count(3, 1, 4), BigCount::from(14u32));
        assert_eq!(brute_count(2, 2, 3), BigCount::from(1u32));
        assert_eq!(brute_count(4, 1, 3), BigCount::from(6u32));
        assert_eq!(brute_count(5, 3, 0), BigCount::from(1u32));
    }

    #[test]
    fn pruned_search_equals_filtered_enumeration() {
        for r in 1..=4 {
            for n in 0..=(8 / r) {
                for d in 2..=6 {
                    let filtered = enumerate_words(r, n)
                        .filter(|w| longest_strict_increase(w) < d)
                        .count();
                    assert_eq!(brute_count(d, r, n), BigCount::from(filtered), "d={d} r={r} n={n}");
                }
            }
        }
    }

    #[test]
    fn reversal_swaps_increase_and_decrease() {
        for r in 1..=4 {
            for n in 0..=(8 / r) {
                for w in enumerate_words(r, n) {
                    let rev: Vec<u32> = w.iter().rev().copied().collect();
                    assert_eq!(longest_strict_increase(&w), longest_strict_decrease(&rev));
                }
            }
        }
    }

    #[test]
    fn budget_check() {
        assert!(!exceeds_budget(1, 9, 1_000_000));
        assert!(exceeds_budget(1, 10, 1_000_000));
    }
}
