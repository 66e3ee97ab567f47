//! Kostka numbers with uniform content `(r^n)` and the RSK sum
//! `A_{d,r}(n) = Σ f_λ · K_{λ,(r^n)}` over shapes with at most `d − 1` rows.
//!
//! A semistandard tableau with content `(r^n)` is a chain
//! `∅ = λ⁰ ⊂ λ¹ ⊂ … ⊂ λⁿ` where each step adds a horizontal strip of `r`
//! cells (the cells holding letter `i`). [`LayerTable`] holds the number of
//! such chains ending at each shape after `i` letters.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::partition::{partitions_upto_length, syt_count, Partition};
use crate::BigCount;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("shape {shape} has size {size}, expected r·n = {expected}")]
    SizeMismatch { shape: Partition, size: usize, expected: usize },
    #[error("layer table keys must all have size {expected}, found {shape}")]
    InconsistentLayer { shape: Partition, expected: usize },
    #[error("layer table values must be positive, {shape} maps to zero")]
    ZeroEntry { shape: Partition },
}

/// Chain counts after `layer` letters have been placed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerTable {
    layer: usize,
    entries: BTreeMap<Partition, BigCount>,
}

impl LayerTable {
    /// Layer 0: `{∅ ↦ 1}`.
    pub fn initial() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(Partition::empty(), BigCount::one());
        LayerTable { layer: 0, entries }
    }

    /// Rebuilds a table from stored entries, e.g. a checkpoint on disk.
    pub fn from_entries(
        layer: usize,
        r: usize,
        entries: impl IntoIterator<Item = (Partition, BigCount)>,
    ) -> Result<Self, TableauError> {
        let expected = r * layer;
        let mut map = BTreeMap::new();
        for (shape, value) in entries {
            if shape.size() != expected {
                return Err(TableauError::InconsistentLayer { shape, expected });
            }
            if value.is_zero() {
                return Err(TableauError::ZeroEntry { shape });
            }
            map.insert(shape, value);
        }
        Ok(LayerTable { layer, entries: map })
    }

    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, shape: &Partition) -> Option<&BigCount> {
        self.entries.get(shape)
    }

    /// Entries in reverse lexicographic order of shape.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigCount)> {
        self.entries.iter().rev()
    }

    /// `Σ f_λ · T[λ]` over the table.
    pub fn weighted_sum(&self) -> BigCount {
        self.entries.iter().map(|(shape, k)| syt_count(shape) * k).sum()
    }
}

/// Calls `visit` with every `μ` such that `ν/μ` is a horizontal strip of
/// exactly `r` cells. Row `i` may lose at most `ν_i − ν_{i+1}` cells.
fn for_each_strip_predecessor(nu: &Partition, r: usize, mut visit: impl FnMut(&Partition)) {
    fn go(
        nu: &Partition,
        row: usize,
        left: usize,
        mu: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Partition),
    ) {
        if row == nu.len() {
            if left == 0 {
                let mut parts = mu.clone();
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                visit(&Partition::from_canonical(parts));
            }
            return;
        }
        let slack = nu.part(row) - nu.part(row + 1);
        for take in 0..=slack.min(left) {
            mu.push(nu.part(row) - take);
            go(nu, row + 1, left - take, mu, visit);
            mu.pop();
        }
    }
    let mut mu = Vec::with_capacity(nu.len());
    go(nu, 0, r, &mut mu, &mut visit);
}

/// One DP step: `T′[ν] = Σ T[μ]` over `μ` with `ν/μ` a horizontal strip of
/// `r` cells, restricted to shapes with at most `cap` rows.
///
/// Targets are evaluated independently (in parallel), so the output does not
/// depend on scheduling.
pub fn advance_layer(table: &LayerTable, r: usize, cap: usize) -> LayerTable {
    let target_size = r * (table.layer + 1);
    let targets: Vec<Partition> = partitions_upto_length(target_size, cap).collect();
    let computed: Vec<(Partition, BigCount)> = targets
        .into_par_iter()
        .filter_map(|nu| {
            let mut acc = BigCount::zero();
            for_each_strip_predecessor(&nu, r, |mu| {
                if let Some(v) = table.entries.get(mu) {
                    acc += v;
                }
            });
            (!acc.is_zero()).then_some((nu, acc))
        })
        .collect();
    LayerTable {
        layer: table.layer + 1,
        entries: computed.into_iter().collect(),
    }
}

/// `K_{λ,(r^n)}`, the number of semistandard tableaux of shape `λ` in which
/// each of `1..=n` appears exactly `r` times.
pub fn kostka_uniform(lambda: &Partition, r: usize, n: usize) -> Result<BigCount, TableauError> {
    let size = lambda.size();
    if size != r * n {
        return Err(TableauError::SizeMismatch {
            shape: lambda.clone(),
            size,
            expected: r * n,
        });
    }
    let cap = lambda.len().max(1);
    let mut table = LayerTable::initial();
    for _ in 0..n {
        table = advance_layer(&table, r, cap);
    }
    Ok(table.get(lambda).cloned().unwrap_or_default())
}

/// Incremental generator of `A_{d,r}(0), A_{d,r}(1), …` sharing one DP capped
/// at `d − 1` rows.
#[derive(Debug, Clone)]
pub struct AvoiderSequencer {
    r: usize,
    cap: usize,
    table: LayerTable,
    layers_computed: usize,
}

impl AvoiderSequencer {
    /// # Panics
    ///
    /// If `d < 2` or `r == 0`.
    pub fn new(d: usize, r: usize) -> Self {
        Self::resume(d, r, LayerTable::initial())
    }

    /// Continues from a previously computed layer table.
    pub fn resume(d: usize, r: usize, table: LayerTable) -> Self {
        assert!(d >= 2, "pattern length d must be at least 2, got {d}");
        assert!(r >= 1, "multiplicity r must be positive");
        AvoiderSequencer {
            r,
            cap: d - 1,
            table,
            layers_computed: 0,
        }
    }

    /// Index of the term [`Self::current`] returns.
    pub fn index(&self) -> usize {
        self.table.layer()
    }

    pub fn current(&self) -> BigCount {
        self.table.weighted_sum()
    }

    pub fn table(&self) -> &LayerTable {
        &self.table
    }

    /// DP layers computed by this sequencer (not counting a resumed prefix).
    pub fn layers_computed(&self) -> usize {
        self.layers_computed
    }

    /// Advances one letter and returns the new term.
    pub fn advance(&mut self) -> BigCount {
        self.table = advance_layer(&self.table, self.r, self.cap);
        self.layers_computed += 1;
        self.current()
    }
}

/// Number of words on `{1^r, …, n^r}` with no strictly increasing
/// subsequence of length `d`.
///
/// # Panics
///
/// If `d < 2` or `r == 0`.
pub fn avoiders_count(d: usize, r: usize, n: usize) -> BigCount {
    let mut seq = AvoiderSequencer::new(d, r);
    for _ in 0..n {
        seq.advance();
    }
    seq.current()
}

/// `[A_{d,r}(0), …, A_{d,r}(n_max)]` from a single incremental DP.
pub fn avoiders_sequence(d: usize, r: usize, n_max: usize) -> Vec<BigCount> {
    let mut seq = AvoiderSequencer::new(d, r);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(seq.current());
    for _ in 0..n_max {
        out.push(seq.advance());
    }
    out
}
