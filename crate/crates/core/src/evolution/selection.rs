//! Tournament selection with the column-crowding penalty.

use rand::Rng;

use super::params::EvolutionParams;
use crate::matrix::Chromosome;
use crate::trend::{fitness, TrendParams};

/// A scored chromosome.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedIndividual {
    pub chromosome: Chromosome,
    pub score: f64,
    pub support_count: usize,
}

impl RankedIndividual {
    pub fn new(chromosome: Chromosome, support_count: usize, trend: &TrendParams) -> Self {
        let score = fitness(support_count, chromosome.len(), trend);
        Self { chromosome, score, support_count }
    }
}

/// How many chromosomes of `pop` use each column.
pub fn column_usage<'a>(
    pop: impl IntoIterator<Item = &'a Chromosome>,
    num_cols: usize,
) -> Vec<u32> {
    let mut usage = vec![0u32; num_cols];
    for c in pop {
        for &col in c.columns() {
            usage[col] += 1;
        }
    }
    usage
}

/// `raw_score / penalty_base^(mean usage of c's columns)`.
pub fn penalized_score(raw_score: f64, c: &Chromosome, usage: &[u32], p: &EvolutionParams) -> f64 {
    let total: u64 = c.columns().iter().map(|&col| u64::from(usage[col])).sum();
    let mean = total as f64 / c.len() as f64;
    raw_score / p.penalty_base.powf(mean)
}

/// Draws `tournament_size` members with replacement and returns the one with
/// the best penalized score. Ties go to the shorter chromosome, then to a
/// uniform random pick among the tied.
pub fn tournament_select<'a, R: Rng + ?Sized>(
    pop: &'a [RankedIndividual],
    usage: &[u32],
    p: &EvolutionParams,
    rng: &mut R,
) -> &'a Chromosome {
    assert!(!pop.is_empty(), "tournament over an empty population");
    let mut best: Option<(&RankedIndividual, f64)> = None;
    let mut tied = 0u32;
    for _ in 0..p.tournament_size.max(1) {
        let cand = &pop[rng.random_range(0..pop.len())];
        let score = penalized_score(cand.score, &cand.chromosome, usage, p);
        match best {
            None => {
                best = Some((cand, score));
                tied = 1;
            }
            Some((incumbent, best_score)) => {
                let better = score > best_score
                    || (score == best_score && cand.chromosome.len() < incumbent.chromosome.len());
                let same =
                    score == best_score && cand.chromosome.len() == incumbent.chromosome.len();
                if better {
                    best = Some((cand, score));
                    tied = 1;
                } else if same {
                    tied += 1;
                    if rng.random_range(0..tied) == 0 {
                        best = Some((cand, score));
                    }
                }
            }
        }
    }
    &best.expect("at least one draw").0.chromosome
}
