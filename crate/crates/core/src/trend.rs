//! Trend kernel: which rows follow the order a chromosome defines, batched
//! population evaluation, and support-to-fitness scoring.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Chromosome, ExpressionMatrix};

/// Rows per work item in [`evaluate_population`].
const ROW_BLOCK: usize = 256;
/// Chromosomes per work item in [`evaluate_population`].
const CHROM_BLOCK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendParams {
    /// Relative slack: each step may drop by `approx * |previous value|`.
    pub approx: f64,
    /// Also accept rows that follow the reversed order.
    pub negative_trends: bool,
    /// Support below this scores zero.
    pub min_rows: usize,
    /// Cap on the exponent of the column bonus.
    pub col_cap: u32,
}

impl Default for TrendParams {
    fn default() -> Self {
        Self { approx: 0.03, negative_trends: false, min_rows: 10, col_cap: 512 }
    }
}

impl TrendParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.approx) {
            return Err(Error::InvalidParams(format!("approx {} not in [0, 1)", self.approx)));
        }
        if self.min_rows < 2 {
            return Err(Error::InvalidParams("min_rows must be at least 2".into()));
        }
        if self.col_cap < 2 {
            return Err(Error::InvalidParams("col_cap must be at least 2".into()));
        }
        Ok(())
    }
}

#[inline]
fn steps_up(values: &[f64], from: usize, to: usize, approx: f64) -> bool {
    let prev = values[from];
    values[to] > prev - approx * prev.abs()
}

/// Trend test against one row's values.
#[inline]
pub(crate) fn follows(values: &[f64], columns: &[usize], p: &TrendParams) -> bool {
    let forward = columns.windows(2).all(|w| steps_up(values, w[0], w[1], p.approx));
    forward
        || (p.negative_trends
            && columns.windows(2).rev().all(|w| steps_up(values, w[1], w[0], p.approx)))
}

/// Whether `row` follows the order defined by `c` (or its reverse, when
/// negative trends are enabled).
pub fn row_supports(m: &ExpressionMatrix, row: usize, c: &Chromosome, p: &TrendParams) -> bool {
    follows(m.row(row), c.columns(), p)
}

pub fn supporting_rows(m: &ExpressionMatrix, c: &Chromosome, p: &TrendParams) -> Vec<usize> {
    (0..m.rows()).filter(|&r| follows(m.row(r), c.columns(), p)).collect()
}

/// Support counts for a whole population, in input order.
///
/// Work is split over a fixed grid of row blocks × chromosome blocks and
/// counts are summed as integers, so the result does not depend on how many
/// workers the current rayon pool has.
pub fn evaluate_population(
    m: &ExpressionMatrix,
    pop: &[Chromosome],
    p: &TrendParams,
) -> Vec<usize> {
    if pop.is_empty() {
        return Vec::new();
    }
    let row_blocks = m.rows().div_ceil(ROW_BLOCK);
    let chrom_blocks = pop.len().div_ceil(CHROM_BLOCK);

    let partials: Vec<(usize, Vec<u32>)> = (0..row_blocks * chrom_blocks)
        .into_par_iter()
        .map(|task| {
            let (rb, cb) = (task / chrom_blocks, task % chrom_blocks);
            let rows = rb * ROW_BLOCK..((rb + 1) * ROW_BLOCK).min(m.rows());
            let chroms = &pop[cb * CHROM_BLOCK..((cb + 1) * CHROM_BLOCK).min(pop.len())];
            let mut counts = vec![0u32; chroms.len()];
            for r in rows {
                let values = m.row(r);
                for (count, c) in counts.iter_mut().zip(chroms) {
                    *count += u32::from(follows(values, c.columns(), p));
                }
            }
            (cb, counts)
        })
        .collect();

    let mut totals = vec![0usize; pop.len()];
    for (cb, counts) in partials {
        for (k, n) in counts.into_iter().enumerate() {
            totals[cb * CHROM_BLOCK + k] += n as usize;
        }
    }
    totals
}

/// `support * 2^min(num_cols, col_cap)`, or 0 below the support floor.
pub fn fitness(support_count: usize, num_cols: usize, p: &TrendParams) -> f64 {
    if support_count < p.min_rows {
        return 0.0;
    }
    let exponent = num_cols.min(p.col_cap as usize) as i32;
    support_count as f64 * 2f64.powi(exponent)
}

/// Runs `f` inside a dedicated rayon pool with `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
