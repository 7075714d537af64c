//! `run`, `generate` and `eval`.

use std::path::{Path, PathBuf};

use evobic::datagen::{replicate_suite, scenario_cases, Scenario, ScenarioSpec, SpecOverrides};
use evobic::trend::with_workers;
use evobic::{clustering_error, recovery, relevance, BiclusterSet, EvolutionParams, RunReport};
use serde::{Deserialize, Serialize};

use crate::args::{EvalArgs, GenerateArgs, Metric, RunArgs, SearchArgs};
use crate::error::{CliError, Result};
use crate::io::{
    parse_biclusters, parse_matrix_tsv, write_biclusters, write_json, write_matrix_tsv,
};

/// Name of the index file `generate` writes and `bench` looks for.
pub const MANIFEST: &str = "manifest.json";

/// `OUT.json` → `OUT.report.json`.
pub fn report_path(output: &Path) -> PathBuf {
    output.with_extension("report.json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub input: PathBuf,
    #[serde(flatten)]
    pub report: RunReport,
    pub params: EvolutionParams,
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => with_workers(n, f),
        None => f(),
    }
}

pub fn check_search_args(s: &SearchArgs) -> Result<()> {
    if s.threads == Some(0) {
        return Err(CliError::InvalidArgs("--threads must be at least 1".into()));
    }
    Ok(())
}

pub fn cmd_run(args: &RunArgs) -> Result<RunSummary> {
    check_search_args(&args.search)?;
    let params = args.search.params(args.biclusters);
    params.validate()?;
    let matrix = parse_matrix_tsv(&args.input)?;
    let (found, report) = with_threads(args.search.threads, || evobic::run(&matrix, &params))?;
    write_biclusters(&args.output, &found)?;
    let summary = RunSummary { input: args.input.clone(), report, params };
    write_json(&report_path(&args.output), &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub case: String,
    pub replicate: usize,
    /// Relative to the manifest's directory.
    pub matrix: PathBuf,
    pub truth: PathBuf,
    pub spec: ScenarioSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub scenario: Scenario,
    pub datasets: Vec<ManifestEntry>,
}

impl GenerateArgs {
    fn overrides(&self) -> SpecOverrides {
        SpecOverrides {
            pattern: self.pattern,
            rows: self.rows,
            cols: self.cols,
            bic_rows: self.bic_rows,
            bic_cols: self.bic_cols,
            num_biclusters: self.biclusters,
            overlap: self.overlap,
            noise: self.noise,
            mean_shift: self.mean_shift,
            seed: self.seed,
        }
    }
}

/// Directory of one test case: the case label without the scenario prefix.
fn case_dir(spec: &ScenarioSpec) -> PathBuf {
    let label = spec.case.strip_prefix(spec.scenario.name()).unwrap_or(&spec.case);
    let label = label.trim_start_matches('/');
    if label.is_empty() {
        PathBuf::from("default")
    } else {
        label.split('/').collect()
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<Manifest> {
    if args.replicates == 0 {
        return Err(CliError::InvalidArgs("--replicates must be at least 1".into()));
    }
    let cases = scenario_cases(args.scenario, &args.overrides());
    for spec in &cases {
        spec.validate()?;
    }
    let mut datasets = Vec::new();
    for spec in &cases {
        for (k, d) in replicate_suite(spec, args.replicates)?.into_iter().enumerate() {
            let dir = case_dir(spec).join(format!("rep{k}"));
            let entry = ManifestEntry {
                case: spec.case.clone(),
                replicate: k,
                matrix: dir.join("matrix.tsv"),
                truth: dir.join("truth.json"),
                spec: d.spec,
            };
            write_matrix_tsv(&args.out.join(&entry.matrix), &d.matrix)?;
            write_biclusters(&args.out.join(&entry.truth), &d.truth)?;
            datasets.push(entry);
        }
    }
    let manifest = Manifest { scenario: args.scenario, datasets };
    write_json(&args.out.join(MANIFEST), &manifest)?;
    Ok(manifest)
}

/// Metric values keyed by name; `None` where the metric is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub ce: Option<f64>,
    pub recovery: Option<f64>,
    pub relevance: Option<f64>,
}

pub fn score(found: &BiclusterSet, truth: &BiclusterSet) -> Scores {
    Scores {
        ce: clustering_error(found, truth).ok(),
        recovery: recovery(found, truth).ok(),
        relevance: relevance(found, truth).ok(),
    }
}

/// JSON object with the requested metrics at six decimals; undefined
/// values print as `null`.
pub fn format_scores(scores: &Scores, metric: Metric) -> String {
    let all = [("ce", scores.ce), ("recovery", scores.recovery), ("relevance", scores.relevance)];
    let wanted: Vec<_> = all
        .into_iter()
        .filter(|(name, _)| match metric {
            Metric::All => true,
            Metric::Ce => *name == "ce",
            Metric::Recovery => *name == "recovery",
            Metric::Relevance => *name == "relevance",
        })
        .map(|(name, v)| match v {
            Some(x) => format!("\"{name}\":{x:.6}"),
            None => format!("\"{name}\":null"),
        })
        .collect();
    format!("{{{}}}", wanted.join(","))
}

pub struct EvalOutcome {
    /// The JSON line to print.
    pub line: String,
    /// Some requested metric was undefined (reported as `null`).
    pub undefined: bool,
}

pub fn cmd_eval(args: &EvalArgs) -> Result<EvalOutcome> {
    let found = parse_biclusters(&args.found)?;
    let truth = parse_biclusters(&args.truth)?;
    let scores = score(&found, &truth);
    let undefined = match args.metric {
        Metric::Ce => scores.ce.is_none(),
        Metric::Recovery => scores.recovery.is_none(),
        Metric::Relevance => scores.relevance.is_none(),
        Metric::All => {
            scores.ce.is_none() || scores.recovery.is_none() || scores.relevance.is_none()
        }
    };
    Ok(EvalOutcome { line: format_scores(&scores, args.metric), undefined })
}
