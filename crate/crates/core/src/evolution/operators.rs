//! Population initialization and the genetic operators.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::{EvolutionParams, OperatorWeights};
use crate::error::{Error, Result};
use crate::matrix::Chromosome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Insertion,
    Deletion,
    Substitution,
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Mutate(Mutation),
    Crossover,
}

const OPERATORS: [Operator; 5] = [
    Operator::Mutate(Mutation::Insertion),
    Operator::Mutate(Mutation::Deletion),
    Operator::Mutate(Mutation::Substitution),
    Operator::Mutate(Mutation::Swap),
    Operator::Crossover,
];

/// Weighted operator draw.
#[derive(Debug, Clone)]
pub struct OperatorPicker(WeightedIndex<f64>);

impl OperatorPicker {
    pub fn new(weights: &OperatorWeights) -> Result<Self> {
        WeightedIndex::new(weights.as_array())
            .map(Self)
            .map_err(|e| Error::InvalidParams(format!("operator weights: {e}")))
    }

    pub fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> Operator {
        OPERATORS[self.0.sample(rng)]
    }
}

/// Random chromosome with length uniform in `[len_min, len_max]`, clipped to
/// the number of columns.
pub fn random_chromosome<R: Rng + ?Sized>(
    len_min: usize,
    len_max: usize,
    num_cols: usize,
    rng: &mut R,
) -> Chromosome {
    let hi = len_max.min(num_cols);
    let lo = len_min.min(hi);
    let len = rng.random_range(lo..=hi);
    Chromosome::from_vec_unchecked(index::sample(rng, num_cols, len).into_vec())
}

/// Initial population drawn from a generator seeded with `p.seed`.
pub fn init_population(p: &EvolutionParams, num_cols: usize) -> Result<Vec<Chromosome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    init_population_with(p, num_cols, &mut rng)
}

pub fn init_population_with<R: Rng + ?Sized>(
    p: &EvolutionParams,
    num_cols: usize,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    if num_cols < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 columns to build chromosomes, matrix has {num_cols}"
        )));
    }
    Ok((0..p.population_size)
        .map(|_| random_chromosome(p.init_len_min, p.init_len_max, num_cols, rng))
        .collect())
}

/// Uniformly chosen column not in `c`, if one exists.
fn absent_column<R: Rng + ?Sized>(c: &[usize], num_cols: usize, rng: &mut R) -> Option<usize> {
    if c.len() >= num_cols {
        return None;
    }
    if 2 * c.len() < num_cols {
        loop {
            let col = rng.random_range(0..num_cols);
            if !c.contains(&col) {
                return Some(col);
            }
        }
    }
    let absent: Vec<usize> = (0..num_cols).filter(|col| !c.contains(col)).collect();
    Some(absent[rng.random_range(0..absent.len())])
}

/// Applies one mutation. Operations that cannot apply (deleting from a
/// length-2 chromosome, inserting when every column is used) return `c`
/// unchanged.
pub fn mutate<R: Rng + ?Sized>(
    c: &Chromosome,
    op: Mutation,
    num_cols: usize,
    rng: &mut R,
) -> Chromosome {
    mutate_bounded(c, op, num_cols, 2, rng)
}

/// [`mutate`] with deletion refused at or below `min_len` columns.
pub fn mutate_bounded<R: Rng + ?Sized>(
    c: &Chromosome,
    op: Mutation,
    num_cols: usize,
    min_len: usize,
    rng: &mut R,
) -> Chromosome {
    let mut cols = c.columns().to_vec();
    match op {
        Mutation::Insertion => {
            let Some(col) = absent_column(&cols, num_cols, rng) else {
                return c.clone();
            };
            let pos = rng.random_range(0..=cols.len());
            cols.insert(pos, col);
        }
        Mutation::Deletion => {
            if cols.len() <= min_len.max(2) {
                return c.clone();
            }
            let pos = rng.random_range(0..cols.len());
            cols.remove(pos);
        }
        Mutation::Substitution => {
            let Some(col) = absent_column(&cols, num_cols, rng) else {
                return c.clone();
            };
            let pos = rng.random_range(0..cols.len());
            cols[pos] = col;
        }
        Mutation::Swap => {
            let i = rng.random_range(0..cols.len());
            let mut j = rng.random_range(0..cols.len() - 1);
            if j >= i {
                j += 1;
            }
            cols.swap(i, j);
        }
    }
    Chromosome::from_vec_unchecked(cols)
}

/// `a[..prefix_len]` followed by `b[suffix_start..]`, keeping the first
/// occurrence of repeated columns. `None` if fewer than two columns remain.
pub fn crossover_at(
    a: &Chromosome,
    b: &Chromosome,
    prefix_len: usize,
    suffix_start: usize,
) -> Option<Chromosome> {
    crossover_at_bounded(a, b, prefix_len, suffix_start, 2)
}

fn crossover_at_bounded(
    a: &Chromosome,
    b: &Chromosome,
    prefix_len: usize,
    suffix_start: usize,
    min_len: usize,
) -> Option<Chromosome> {
    let mut child = a.columns()[..prefix_len].to_vec();
    for &col in &b.columns()[suffix_start..] {
        if !child.contains(&col) {
            child.push(col);
        }
    }
    (child.len() >= min_len.max(2)).then(|| Chromosome::from_vec_unchecked(child))
}

const CROSSOVER_ATTEMPTS: usize = 8;

/// One-point splice of a prefix of `a` (at least one column) with a suffix of
/// `b` (at least one column). Falls back to `a` when every attempt is too short.
pub fn crossover<R: Rng + ?Sized>(a: &Chromosome, b: &Chromosome, rng: &mut R) -> Chromosome {
    crossover_bounded(a, b, 2, rng)
}

/// [`crossover`] retrying children shorter than `min_len`.
pub fn crossover_bounded<R: Rng + ?Sized>(
    a: &Chromosome,
    b: &Chromosome,
    min_len: usize,
    rng: &mut R,
) -> Chromosome {
    for _ in 0..CROSSOVER_ATTEMPTS {
        let prefix_len = rng.random_range(1..=a.len());
        let suffix_start = rng.random_range(0..b.len());
        if let Some(child) = crossover_at_bounded(a, b, prefix_len, suffix_start, min_len) {
            return child;
        }
    }
    a.clone()
}
