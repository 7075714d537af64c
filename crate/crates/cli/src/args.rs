//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use evobic::datagen::{Pattern, Scenario};
use evobic::evolution::{OperatorWeights, OverlapMeasure};
use evobic::{EvolutionParams, TrendParams};

#[derive(Debug, Parser)]
#[command(
    name = "evobic",
    version,
    about = "Evolutionary biclustering of trend-preserving patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search a matrix for biclusters.
    Run(RunArgs),
    /// Write synthetic benchmark datasets with ground truth.
    Generate(GenerateArgs),
    /// Score found biclusters against ground truth.
    Eval(EvalArgs),
    /// Run and score every dataset under a directory tree.
    Bench(BenchArgs),
}

/// Search settings shared by `run` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Maximum number of generations.
    #[arg(short = 'n', long = "iterations", default_value_t = 20_000)]
    pub iterations: usize,
    /// Relative slack allowed per step of a trend.
    #[arg(long, default_value_t = 0.03)]
    pub approx: f64,
    /// Also accept rows following the reversed column order.
    #[arg(long)]
    pub negative_trends: bool,
    /// Overlap level at which archive entries count as duplicates.
    #[arg(long, default_value_t = 0.65)]
    pub overlap: f64,
    /// How overlap is measured: containment (shared cells over the smaller
    /// bicluster) or jaccard (shared cells over the union).
    #[arg(long, value_parser = parse_measure, default_value = "containment")]
    pub overlap_measure: OverlapMeasure,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads for fitness evaluation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub pop_size: Option<usize>,
    #[arg(long)]
    pub elite_count: Option<usize>,
    #[arg(long)]
    pub tournament_size: Option<usize>,
    /// Duplicate offspring tolerated without archive progress before stopping.
    #[arg(long)]
    pub tabu_hits: Option<usize>,
    #[arg(long)]
    pub penalty_base: Option<f64>,
    /// Weights for insertion, deletion, substitution, swap, crossover.
    #[arg(long, value_delimiter = ',', num_args = 5)]
    pub operator_weights: Option<Vec<f64>>,
    #[arg(long)]
    pub init_len_min: Option<usize>,
    #[arg(long)]
    pub init_len_max: Option<usize>,
    /// Shortest chromosome offspring may shrink to.
    #[arg(long)]
    pub min_len: Option<usize>,
    /// Support below this many rows scores zero.
    #[arg(long)]
    pub min_rows: Option<usize>,
    /// Cap on the column exponent of the fitness bonus.
    #[arg(long)]
    pub col_cap: Option<u32>,
}

impl SearchArgs {
    pub fn params(&self, num_biclusters: usize) -> EvolutionParams {
        let d = EvolutionParams::default();
        let trend = TrendParams {
            approx: self.approx,
            negative_trends: self.negative_trends,
            min_rows: self.min_rows.unwrap_or(d.trend.min_rows),
            col_cap: self.col_cap.unwrap_or(d.trend.col_cap),
        };
        let operator_weights = match self.operator_weights.as_deref() {
            Some(&[insertion, deletion, substitution, swap, crossover]) => {
                OperatorWeights { insertion, deletion, substitution, swap, crossover }
            }
            _ => d.operator_weights,
        };
        EvolutionParams {
            population_size: self.pop_size.unwrap_or(d.population_size),
            elite_count: self.elite_count.unwrap_or(d.elite_count),
            max_iterations: self.iterations,
            num_biclusters,
            tabu_hits_threshold: self.tabu_hits.unwrap_or(d.tabu_hits_threshold),
            tournament_size: self.tournament_size.unwrap_or(d.tournament_size),
            operator_weights,
            penalty_base: self.penalty_base.unwrap_or(d.penalty_base),
            overlap_threshold: self.overlap,
            overlap_measure: self.overlap_measure,
            init_len_min: self.init_len_min.unwrap_or(d.init_len_min),
            init_len_max: self.init_len_max.unwrap_or(d.init_len_max),
            min_len: self.min_len.unwrap_or(d.min_len),
            seed: self.seed,
            trend,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input matrix (TSV with header row and label column).
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Output bicluster JSON; the run report goes next to it as *.report.json.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Number of biclusters to report.
    #[arg(short = 'b', long = "biclusters", default_value_t = 3)]
    pub biclusters: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_scenario)]
    pub scenario: Scenario,
    /// Output directory; receives manifest.json and one directory per case.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub replicates: usize,
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: Option<Pattern>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub bic_rows: Option<usize>,
    #[arg(long)]
    pub bic_cols: Option<usize>,
    /// Number of implanted biclusters.
    #[arg(long)]
    pub biclusters: Option<usize>,
    /// Side of the shared block between consecutive implants (overlap scenario).
    #[arg(long)]
    pub overlap: Option<usize>,
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long)]
    pub mean_shift: Option<f64>,
    /// Seed of the first replicate; replicate k uses seed + k.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Ce,
    Recovery,
    Relevance,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Found biclusters (JSON or text dialect).
    #[arg(long)]
    pub found: PathBuf,
    /// Ground truth (JSON or text dialect).
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value_t = Metric::All)]
    pub metric: Metric,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Root of a tree containing manifest.json files written by `generate`.
    #[arg(long)]
    pub dir: PathBuf,
    /// Per-dataset results CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional per-case summary CSV.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Datasets processed concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    s.parse().map_err(|e: evobic::Error| e.to_string())
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.parse().map_err(|e: evobic::Error| e.to_string())
}

fn parse_measure(s: &str) -> Result<OverlapMeasure, String> {
    s.parse().map_err(|e: evobic::Error| e.to_string())
}
