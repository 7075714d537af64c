//! Tabu list and top-rank archive.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::params::OverlapMeasure;
use super::selection::RankedIndividual;
use crate::matrix::{Bicluster, ExpressionMatrix};
use crate::trend::{supporting_rows, TrendParams};

/// Digests of every chromosome generated so far, plus the count of rejected
/// duplicates since the last reset.
#[derive(Debug, Clone, Default)]
pub struct TabuList {
    seen: HashSet<u64>,
    hit_count: usize,
}

impl TabuList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `digest`. Returns `false` and counts a hit if it was already seen.
    pub fn try_insert(&mut self, digest: u64) -> bool {
        let fresh = self.seen.insert(digest);
        if !fresh {
            self.hit_count += 1;
        }
        fresh
    }

    /// Records `digest` without counting a hit.
    pub fn record(&mut self, digest: u64) {
        self.seen.insert(digest);
    }

    pub fn contains(&self, digest: u64) -> bool {
        self.seen.contains(&digest)
    }

    pub fn hit_count(&self) -> usize {
        self.hit_count
    }

    pub fn reset_hits(&mut self) {
        self.hit_count = 0;
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

/// Archive ordering: higher score first, then fewer columns, then
/// lexicographically smaller chromosome.
pub fn rank_order(a: &RankedIndividual, b: &RankedIndividual) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| a.chromosome.len().cmp(&b.chromosome.len()))
        .then_with(|| a.chromosome.cmp(&b.chromosome))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopRankEntry {
    pub individual: RankedIndividual,
    /// Supporting rows × chromosome columns.
    pub bicluster: Bicluster,
}

/// Best-so-far individuals, sorted by [`rank_order`], pairwise overlapping
/// less than the threshold.
#[derive(Debug, Clone)]
pub struct TopRankList {
    entries: Vec<TopRankEntry>,
    capacity: usize,
    overlap_threshold: f64,
    measure: OverlapMeasure,
}

impl TopRankList {
    pub fn new(capacity: usize, overlap_threshold: f64, measure: OverlapMeasure) -> Self {
        Self { entries: Vec::with_capacity(capacity + 1), capacity, overlap_threshold, measure }
    }

    pub fn entries(&self) -> &[TopRankEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn best_score(&self) -> Option<f64> {
        self.entries.first().map(|e| e.individual.score)
    }

    /// Offers `ind` to the archive; returns whether it was admitted.
    ///
    /// Zero-score individuals never enter. An entry overlapping `ind` at or
    /// above the threshold is evicted if `ind` ranks strictly higher;
    /// otherwise `ind` is rejected.
    pub fn insert(
        &mut self,
        ind: RankedIndividual,
        m: &ExpressionMatrix,
        trend: &TrendParams,
    ) -> bool {
        if ind.score <= 0.0 || self.capacity == 0 {
            return false;
        }
        if self.entries.len() >= self.capacity {
            let last = &self.entries[self.entries.len() - 1].individual;
            if rank_order(&ind, last) != Ordering::Less {
                return false;
            }
        }
        let rows = supporting_rows(m, &ind.chromosome, trend);
        let bicluster = match Bicluster::new(rows, ind.chromosome.columns().to_vec()) {
            Ok(b) => b,
            Err(_) => return false,
        };

        let mut clashes = Vec::new();
        for (k, e) in self.entries.iter().enumerate() {
            if self.measure.between(&e.bicluster, &bicluster) >= self.overlap_threshold {
                if rank_order(&e.individual, &ind) != Ordering::Greater {
                    return false;
                }
                clashes.push(k);
            }
        }
        for k in clashes.into_iter().rev() {
            self.entries.remove(k);
        }
        let pos =
            self.entries.partition_point(|e| rank_order(&e.individual, &ind) == Ordering::Less);
        self.entries.insert(pos, TopRankEntry { individual: ind, bicluster });
        self.entries.truncate(self.capacity);
        true
    }
}

/// Functional form of [`TopRankList::insert`].
pub fn update_top_rank(
    mut list: TopRankList,
    ind: RankedIndividual,
    m: &ExpressionMatrix,
    trend: &TrendParams,
) -> TopRankList {
    list.insert(ind, m, trend);
    list
}
