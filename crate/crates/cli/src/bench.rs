//! `bench`: run and score every generated dataset under a directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use evobic::Termination;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::args::BenchArgs;
use crate::commands::{check_search_args, score, with_threads, Manifest, ManifestEntry, MANIFEST};
use crate::error::{CliError, Result};
use crate::io::{parse_biclusters_within, parse_matrix_tsv};

pub const RESULTS_HEADER: &str =
    "dataset_path,scenario,replicate,ce,recovery,relevance,wall_time_seconds,generations,termination";

/// One results row. Metrics are blank when undefined or when the dataset failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub dataset_path: String,
    pub scenario: String,
    pub replicate: usize,
    pub ce: Option<f64>,
    pub recovery: Option<f64>,
    pub relevance: Option<f64>,
    pub wall_time_seconds: f64,
    pub generations: usize,
    pub termination: Termination,
}

pub const SUMMARY_HEADER: &str = "scenario,datasets,median_ce,mean_ce,mean_wall_time_seconds";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub scenario: String,
    pub datasets: usize,
    pub median_ce: Option<f64>,
    pub mean_ce: Option<f64>,
    pub mean_wall_time_seconds: f64,
}

struct Job {
    root_relative: PathBuf,
    base: PathBuf,
    entry: ManifestEntry,
}

/// Every manifest under `root`, in path order.
fn collect_jobs(root: &Path) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for item in WalkDir::new(root).sort_by_file_name() {
        let item = item.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            CliError::io(&path, e.into())
        })?;
        if item.file_name() != MANIFEST || !item.file_type().is_file() {
            continue;
        }
        let text =
            std::fs::read_to_string(item.path()).map_err(|e| CliError::io(item.path(), e))?;
        let manifest: Manifest = serde_json::from_str(&text)
            .map_err(|e| CliError::format(item.path(), e.to_string()))?;
        let base = item.path().parent().unwrap_or(root).to_path_buf();
        let rel_base = base.strip_prefix(root).unwrap_or(&base).to_path_buf();
        for entry in manifest.datasets {
            jobs.push(Job {
                root_relative: rel_base.join(&entry.matrix),
                base: base.clone(),
                entry,
            });
        }
    }
    Ok(jobs)
}

fn run_one(job: &Job, args: &BenchArgs) -> BenchRecord {
    let start = Instant::now();
    let outcome = (|| -> Result<_> {
        let matrix = parse_matrix_tsv(&job.base.join(&job.entry.matrix))?;
        let truth = parse_biclusters_within(
            &job.base.join(&job.entry.truth),
            matrix.rows(),
            matrix.cols(),
        )?;
        let params = args.search.params(truth.len().max(1));
        let (found, report) = evobic::run(&matrix, &params)?;
        Ok((score(&found, &truth), report))
    })();
    let mut record = BenchRecord {
        dataset_path: job.root_relative.to_string_lossy().into_owned(),
        scenario: job.entry.case.clone(),
        replicate: job.entry.replicate,
        ce: None,
        recovery: None,
        relevance: None,
        wall_time_seconds: 0.0,
        generations: 0,
        termination: Termination::Budget,
    };
    match outcome {
        Ok((scores, report)) => {
            record.ce = scores.ce;
            record.recovery = scores.recovery;
            record.relevance = scores.relevance;
            record.generations = report.generations;
            record.termination = report.termination;
        }
        Err(e) => eprintln!("warning: {}: {e}", record.dataset_path),
    }
    record.wall_time_seconds = start.elapsed().as_secs_f64();
    record
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 { values[mid] } else { (values[mid - 1] + values[mid]) / 2.0 })
}

/// Per test case: CE median and mean over replicates, and mean wall time.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRecord> {
    let mut order: Vec<&str> = Vec::new();
    for r in records {
        if !order.contains(&r.scenario.as_str()) {
            order.push(&r.scenario);
        }
    }
    order
        .into_iter()
        .map(|name| {
            let group: Vec<&BenchRecord> = records.iter().filter(|r| r.scenario == name).collect();
            let mut ces: Vec<f64> = group.iter().filter_map(|r| r.ce).collect();
            let mean_ce = (!ces.is_empty()).then(|| ces.iter().sum::<f64>() / ces.len() as f64);
            SummaryRecord {
                scenario: name.to_string(),
                datasets: group.len(),
                median_ce: median(&mut ces),
                mean_ce,
                mean_wall_time_seconds: group.iter().map(|r| r.wall_time_seconds).sum::<f64>()
                    / group.len() as f64,
            }
        })
        .collect()
}

/// The header is written explicitly so that empty tables still carry it.
fn write_csv<T: Serialize>(path: &Path, rows: &[T], header: &str) -> Result<()> {
    let to_err = |e: csv::Error| CliError::format(path, e.to_string());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header.split(',')).map_err(to_err)?;
    for row in rows {
        w.serialize(row).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::format(path, e.to_string()))?;
    crate::io::write_file(path, &bytes)
}

fn read_csv<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let to_err = |e: csv::Error| CliError::format(path, e.to_string());
    let mut rdr = csv::Reader::from_path(path).map_err(to_err)?;
    rdr.deserialize().collect::<std::result::Result<_, _>>().map_err(to_err)
}

/// Reads a results CSV back.
pub fn read_results(path: &Path) -> Result<Vec<BenchRecord>> {
    read_csv(path)
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRecord>> {
    read_csv(path)
}

/// Runs every dataset, writes the results (and optional summary) CSV, and
/// returns the records in dataset order. A dataset that fails to load or
/// run is recorded with blank metrics instead of aborting the sweep.
pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<BenchRecord>> {
    check_search_args(&args.search)?;
    if args.jobs == 0 {
        return Err(CliError::InvalidArgs("--jobs must be at least 1".into()));
    }
    args.search.params(1).validate()?;
    let jobs = collect_jobs(&args.dir)?;
    let records: Vec<BenchRecord> = if args.jobs == 1 {
        with_threads(args.search.threads, || jobs.iter().map(|j| run_one(j, args)).collect())
    } else {
        // Datasets and their evaluation share one pool of `jobs` workers.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| CliError::InvalidArgs(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(|j| run_one(j, args)).collect())
    };
    write_csv(&args.out, &records, RESULTS_HEADER)?;
    if let Some(path) = &args.summary {
        write_csv(path, &summarize(&records), SUMMARY_HEADER)?;
    }
    Ok(records)
}
