//! The generation loop.
//!
//! All randomness comes from the state's generator, consumed in a fixed
//! order: for each offspring slot in turn, the tournament draws, the operator
//! draw, the operator's own draws (a second tournament for crossover), then
//! the same again for each tabu retry, and finally the draws for a fresh
//! random chromosome if every retry was a duplicate. Fitness evaluation and
//! archive updates consume nothing, so worker count cannot perturb the stream.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::archive::{TabuList, TopRankList};
use super::operators::{
    crossover_bounded, init_population_with, mutate_bounded, random_chromosome, Operator,
    OperatorPicker,
};
use super::params::EvolutionParams;
use super::selection::{column_usage, tournament_select, RankedIndividual};
use crate::error::Result;
use crate::matrix::{Bicluster, BiclusterSet, Chromosome, ExpressionMatrix};
use crate::trend::evaluate_population;

/// Attempts per offspring slot before falling back to a fresh random chromosome.
pub const TABU_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    /// Tabu hits reached the threshold.
    Converged,
    /// `max_iterations` generations completed.
    Budget,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged",
            Termination::Budget => "budget",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Advanced,
    Converged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub generations: usize,
    pub wall_time_seconds: f64,
    pub termination: Termination,
    pub best_score: f64,
    pub evaluated_chromosomes: usize,
}

#[derive(Debug, Clone)]
pub struct EvolutionState {
    pub generation: usize,
    pub population: Vec<RankedIndividual>,
    pub top_rank: TopRankList,
    pub tabu: TabuList,
    pub column_usage: Vec<u32>,
    rng: ChaCha8Rng,
    picker: OperatorPicker,
    num_cols: usize,
}

impl EvolutionState {
    /// Random initial population, scored, with the archive seeded from it.
    pub fn initialize(m: &ExpressionMatrix, p: &EvolutionParams) -> Result<Self> {
        p.validate()?;
        let picker = OperatorPicker::new(&p.operator_weights)?;
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let chromosomes = init_population_with(p, m.cols(), &mut rng)?;
        let mut tabu = TabuList::new();
        for c in &chromosomes {
            tabu.record(c.digest());
        }
        let mut state = Self {
            generation: 0,
            population: Vec::new(),
            top_rank: TopRankList::new(
                p.top_rank_capacity(),
                p.overlap_threshold,
                p.overlap_measure,
            ),
            tabu,
            column_usage: Vec::new(),
            rng,
            picker,
            num_cols: m.cols(),
        };
        let scored = state.score_and_archive(m, p, chromosomes);
        state.column_usage = column_usage(scored.iter().map(|i| &i.chromosome), m.cols());
        state.population = scored;
        Ok(state)
    }

    fn score_and_archive(
        &mut self,
        m: &ExpressionMatrix,
        p: &EvolutionParams,
        chromosomes: Vec<Chromosome>,
    ) -> Vec<RankedIndividual> {
        let counts = evaluate_population(m, &chromosomes, &p.trend);
        let mut progressed = false;
        let scored: Vec<RankedIndividual> = chromosomes
            .into_iter()
            .zip(counts)
            .map(|(c, n)| RankedIndividual::new(c, n, &p.trend))
            .collect();
        for ind in &scored {
            progressed |= self.top_rank.insert(ind.clone(), m, &p.trend);
        }
        if progressed {
            self.tabu.reset_hits();
        }
        scored
    }

    /// One offspring: tournament, operator, tabu check with bounded retries.
    fn breed_one(&mut self, p: &EvolutionParams) -> Chromosome {
        for _ in 0..TABU_RETRIES {
            let parent = tournament_select(&self.population, &self.column_usage, p, &mut self.rng);
            let child = match self.picker.pick(&mut self.rng) {
                Operator::Mutate(op) => {
                    mutate_bounded(parent, op, self.num_cols, p.min_len, &mut self.rng)
                }
                Operator::Crossover => {
                    let other =
                        tournament_select(&self.population, &self.column_usage, p, &mut self.rng);
                    crossover_bounded(parent, other, p.min_len, &mut self.rng)
                }
            };
            if self.tabu.try_insert(child.digest()) {
                return child;
            }
        }
        let fresh = random_chromosome(p.init_len_min, p.init_len_max, self.num_cols, &mut self.rng);
        self.tabu.record(fresh.digest());
        fresh
    }

    /// Offspring for the non-elite slots of the next generation.
    pub fn breed(&mut self, p: &EvolutionParams, count: usize) -> Vec<Chromosome> {
        (0..count).map(|_| self.breed_one(p)).collect()
    }

    pub fn rng(&self) -> &ChaCha8Rng {
        &self.rng
    }
}

/// Advances one generation: elites from the archive, offspring by tournament
/// and mutation, convergence check on tabu hits, then batch scoring.
///
/// On [`StepOutcome::Converged`] the offspring are discarded and the state
/// keeps its previous population and generation counter.
pub fn step_generation(
    state: &mut EvolutionState,
    m: &ExpressionMatrix,
    p: &EvolutionParams,
) -> StepOutcome {
    let elites: Vec<RankedIndividual> =
        state.top_rank.entries().iter().take(p.elite_count).map(|e| e.individual.clone()).collect();
    let offspring = state.breed(p, p.population_size - elites.len());

    if state.tabu.hit_count() >= p.tabu_hits_threshold {
        return StepOutcome::Converged;
    }

    let scored = state.score_and_archive(m, p, offspring);
    let mut population = elites;
    population.extend(scored);
    state.column_usage = column_usage(population.iter().map(|i| &i.chromosome), state.num_cols);
    state.population = population;
    state.generation += 1;
    StepOutcome::Advanced
}

/// Builds the output biclusters from the best archive entries.
pub fn finalize(state: &EvolutionState, p: &EvolutionParams) -> BiclusterSet {
    state
        .top_rank
        .entries()
        .iter()
        .take(p.num_biclusters)
        .map(|e| e.bicluster.clone())
        .collect::<Vec<Bicluster>>()
        .into()
}

/// Full search: loops until the iteration budget is spent or the tabu hit
/// count reaches its threshold, then reports the top `num_biclusters`
/// archive entries. An archive with no entry above the support floor yields
/// an empty set.
pub fn run(m: &ExpressionMatrix, p: &EvolutionParams) -> Result<(BiclusterSet, RunReport)> {
    let start = Instant::now();
    let mut state = EvolutionState::initialize(m, p)?;
    let mut termination = Termination::Budget;
    while state.generation < p.max_iterations {
        if step_generation(&mut state, m, p) == StepOutcome::Converged {
            termination = Termination::Converged;
            break;
        }
    }
    let biclusters = finalize(&state, p);
    let report = RunReport {
        generations: state.generation,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        termination,
        best_score: state.top_rank.best_score().unwrap_or(0.0),
        evaluated_chromosomes: state.tabu.len(),
    };
    Ok((biclusters, report))
}
