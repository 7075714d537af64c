use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{cell_containment, cell_jaccard, Bicluster};
use crate::trend::TrendParams;

/// How the archive decides that two biclusters are the same pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapMeasure {
    /// Shared cells over the smaller bicluster's size.
    #[default]
    Containment,
    /// Shared cells over the union.
    Jaccard,
}

impl OverlapMeasure {
    pub fn between(self, a: &Bicluster, b: &Bicluster) -> f64 {
        match self {
            OverlapMeasure::Containment => cell_containment(a, b),
            OverlapMeasure::Jaccard => cell_jaccard(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OverlapMeasure::Containment => "containment",
            OverlapMeasure::Jaccard => "jaccard",
        }
    }
}

impl fmt::Display for OverlapMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OverlapMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [OverlapMeasure::Containment, OverlapMeasure::Jaccard]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown overlap measure {s:?}")))
    }
}

/// Relative weights of the five genetic operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorWeights {
    pub insertion: f64,
    pub deletion: f64,
    pub substitution: f64,
    pub swap: f64,
    pub crossover: f64,
}

impl Default for OperatorWeights {
    fn default() -> Self {
        Self { insertion: 0.3, deletion: 0.1, substitution: 0.25, swap: 0.15, crossover: 0.2 }
    }
}

impl OperatorWeights {
    pub fn as_array(&self) -> [f64; 5] {
        [self.insertion, self.deletion, self.substitution, self.swap, self.crossover]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub population_size: usize,
    pub elite_count: usize,
    pub max_iterations: usize,
    pub num_biclusters: usize,
    /// Duplicate offspring tolerated since the archive last improved. A
    /// stagnant population produces 50-100 duplicates per generation, so
    /// the default allows a few hundred generations without progress.
    pub tabu_hits_threshold: usize,
    pub tournament_size: usize,
    pub operator_weights: OperatorWeights,
    /// Tournament scores are divided by `penalty_base^(mean column usage)`.
    pub penalty_base: f64,
    /// Archive entries at or above this overlap are treated as duplicates.
    pub overlap_threshold: f64,
    #[serde(default)]
    pub overlap_measure: OverlapMeasure,
    pub init_len_min: usize,
    pub init_len_max: usize,
    /// Offspring never shrink below this many columns.
    pub min_len: usize,
    pub seed: u64,
    pub trend: TrendParams,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        Self {
            population_size: 400,
            elite_count: 8,
            max_iterations: 20_000,
            num_biclusters: 3,
            tabu_hits_threshold: 12_000,
            tournament_size: 4,
            operator_weights: OperatorWeights::default(),
            penalty_base: 1.01,
            overlap_threshold: 0.65,
            overlap_measure: OverlapMeasure::Containment,
            init_len_min: 3,
            init_len_max: 5,
            min_len: 3,
            seed: 42,
            trend: TrendParams::default(),
        }
    }
}

impl EvolutionParams {
    /// Capacity of the top-rank archive.
    pub fn top_rank_capacity(&self) -> usize {
        3 * self.num_biclusters
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.elite_count == 0 || self.elite_count >= self.population_size {
            return fail(format!(
                "elite_count {} must be in 1..{}",
                self.elite_count, self.population_size
            ));
        }
        if self.num_biclusters == 0 {
            return fail("num_biclusters must be positive".into());
        }
        if self.tournament_size == 0 {
            return fail("tournament_size must be positive".into());
        }
        let weights = self.operator_weights.as_array();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || weights.iter().all(|w| *w == 0.0) {
            return fail(format!("operator weights {weights:?} must be nonnegative, not all zero"));
        }
        if !(self.penalty_base.is_finite() && self.penalty_base > 1.0) {
            return fail(format!("penalty_base {} must exceed 1", self.penalty_base));
        }
        if !(0.0..=1.0).contains(&self.overlap_threshold) {
            return fail(format!("overlap_threshold {} not in [0, 1]", self.overlap_threshold));
        }
        if self.init_len_min < 2 || self.init_len_max < self.init_len_min {
            return fail(format!(
                "initial length range [{}, {}] invalid",
                self.init_len_min, self.init_len_max
            ));
        }
        if self.min_len < 2 || self.min_len > self.init_len_min {
            return fail(format!(
                "min_len {} must be in [2, init_len_min = {}]",
                self.min_len, self.init_len_min
            ));
        }
        self.trend.validate()
    }
}
