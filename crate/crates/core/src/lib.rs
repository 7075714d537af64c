//! Evolutionary biclustering of order-preserving (trend) patterns.
//!
//! A chromosome is an ordered list of columns; the rows whose values rise
//! along that order form a bicluster. The search evolves a population of
//! chromosomes, scoring each by its supporting row count and width, and keeps
//! a non-overlapping archive of the best ones. Alongside the search are the
//! ground-truth metrics (Clustering Error, recovery, relevance) and synthetic
//! benchmark generators.

pub mod datagen;
pub mod error;
pub mod evolution;
pub mod matrix;
pub mod metrics;
pub mod trend;

pub use error::{Error, Result};
pub use evolution::{run, EvolutionParams, RunReport, Termination};
pub use matrix::{
    bicluster_cells, cell_containment, cell_jaccard, chromosome_hash, Bicluster, BiclusterSet,
    Chromosome, ExpressionMatrix,
};
pub use metrics::{clustering_error, recovery, relevance};
pub use trend::{evaluate_population, fitness, row_supports, supporting_rows, TrendParams};
