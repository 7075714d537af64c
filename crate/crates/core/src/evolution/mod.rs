//! Evolutionary search over column orders.

mod archive;
mod engine;
mod operators;
mod params;
mod selection;

pub use archive::{rank_order, update_top_rank, TabuList, TopRankEntry, TopRankList};
pub use engine::{
    finalize, run, step_generation, EvolutionState, RunReport, StepOutcome, Termination,
    TABU_RETRIES,
};
pub use operators::{
    crossover, crossover_at, crossover_bounded, init_population, init_population_with, mutate,
    mutate_bounded, random_chromosome, Mutation, Operator, OperatorPicker,
};
pub use params::{EvolutionParams, OperatorWeights, OverlapMeasure};
pub use selection::{column_usage, penalized_score, tournament_select, RankedIndividual};
