use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use clap::Parser;
use evobic::datagen::gen_scenario;
use evobic::{cell_jaccard, Termination};
use evobic_cli::args::{BenchArgs, Cli, Command as Sub};
use evobic_cli::bench::{cmd_bench, read_results, read_summary, RESULTS_HEADER, SUMMARY_HEADER};
use evobic_cli::commands::{report_path, Manifest, MANIFEST};
use evobic_cli::io::{parse_biclusters, parse_matrix_tsv};

fn evobic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evobic")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = evobic(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn eval_line(found: &Path, truth: &Path) -> String {
    stdout(&ok(&["eval", "--found", s(found), "--truth", s(truth), "--metric", "ce"]))
}

/// One noiseless 200×20 trend dataset with a 40×6 implant.
fn small_dataset(dir: &Path) -> (PathBuf, PathBuf) {
    ok(&[
        "generate",
        "--scenario",
        "noise",
        "--out",
        s(dir),
        "--noise",
        "0",
        "--replicates",
        "1",
        "--rows",
        "200",
        "--cols",
        "20",
        "--bic-rows",
        "40",
        "--bic-cols",
        "6",
        "--biclusters",
        "1",
        "--seed",
        "11",
    ]);
    let rep = dir.join("sigma0/rep0");
    (rep.join("matrix.tsv"), rep.join("truth.json"))
}

fn manifest(dir: &Path) -> Manifest {
    serde_json::from_str(&fs::read_to_string(dir.join(MANIFEST)).unwrap()).unwrap()
}

#[test]
fn run_with_zero_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, _) = small_dataset(dir.path());
    let out = dir.path().join("out.json");
    ok(&["run", "-i", s(&matrix), "-o", s(&out), "-n", "0", "-b", "2"]);
    let found = parse_biclusters(&out).unwrap();
    assert!(found.len() <= 2);
    found.check_bounds(200, 20).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report_path(&out)).unwrap()).unwrap();
    assert_eq!(report["generations"], 0);
    assert_eq!(report["termination"], "budget");
    assert!(report["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn run_recovers_generated_truth() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, truth) = small_dataset(dir.path());
    let out = dir.path().join("found.json");
    ok(&["run", "-i", s(&matrix), "-o", s(&out), "-b", "1"]);
    let line = eval_line(&out, &truth);
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert!(v["ce"].as_f64().unwrap() >= 0.9, "{line}");
}

#[test]
fn run_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, _) = small_dataset(dir.path());
    let outputs: Vec<Vec<u8>> = [("a", "1"), ("b", "1"), ("c", "3")]
        .iter()
        .map(|(name, threads)| {
            let out = dir.path().join(format!("{name}.json"));
            ok(&[
                "run",
                "-i",
                s(&matrix),
                "-o",
                s(&out),
                "-n",
                "150",
                "--seed",
                "9",
                "--threads",
                threads,
            ]);
            fs::read(&out).unwrap()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn generate_narrow() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["generate", "--scenario", "narrow", "--out", s(dir.path()), "--replicates", "2"]);
    let m = manifest(dir.path());
    assert_eq!(m.datasets.len(), 6);
    let widths: BTreeSet<usize> = m.datasets.iter().map(|d| d.spec.bic_cols).collect();
    assert_eq!(widths, BTreeSet::from([10, 20, 30]));
    for d in &m.datasets {
        let matrix = parse_matrix_tsv(&dir.path().join(&d.matrix)).unwrap();
        assert_eq!((matrix.rows(), matrix.cols()), (1000, 100));
        let truth = parse_biclusters(&dir.path().join(&d.truth)).unwrap();
        assert_eq!(truth.len(), 3);
        assert!(truth.iter().all(|b| b.rows().len() == 100 && b.cols().len() == d.spec.bic_cols));
        // Files carry exactly what the generator produces for the listed spec.
        let again = gen_scenario(&d.spec).unwrap();
        assert_eq!(again.truth, truth);
        assert_eq!(again.matrix.values(), matrix.values());
    }
}

#[test]
fn manifest_lists_every_file() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "generate",
        "--scenario",
        "overlap",
        "--out",
        s(dir.path()),
        "--replicates",
        "3",
        "--rows",
        "60",
        "--cols",
        "60",
        "--bic-rows",
        "12",
        "--bic-cols",
        "12",
    ]);
    let m = manifest(dir.path());
    let mut listed: BTreeSet<PathBuf> =
        m.datasets.iter().flat_map(|d| [d.matrix.clone(), d.truth.clone()]).collect();
    listed.insert(PathBuf::from(MANIFEST));
    let on_disk: BTreeSet<PathBuf> = walk(dir.path())
        .into_iter()
        .map(|p| p.strip_prefix(dir.path()).unwrap().to_path_buf())
        .collect();
    assert_eq!(listed, on_disk);
    assert_eq!(m.datasets.len(), 4 * 3);
    for d in &m.datasets {
        let truth = parse_biclusters(&dir.path().join(&d.truth)).unwrap();
        let (r, c) = d.spec.overlap_cells;
        let shared = cell_jaccard(&truth.biclusters[0], &truth.biclusters[1]);
        let cells = (r * c) as f64;
        assert!((shared - cells / (2.0 * 144.0 - cells)).abs() < 1e-12);
    }
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}

#[test]
fn generate_noise_sanity_case() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "generate",
        "--scenario",
        "noise",
        "--out",
        s(dir.path()),
        "--noise",
        "0.0",
        "--replicates",
        "1",
    ]);
    let m = manifest(dir.path());
    assert_eq!(m.datasets.len(), 1);
    assert_eq!(m.datasets[0].spec.noise_sigma, 0.0);
    assert_eq!(m.datasets[0].case, "noise/sigma0");
    let truth = dir.path().join(&m.datasets[0].truth);
    assert_eq!(eval_line(&truth, &truth), "{\"ce\":1.000000}");
}

#[test]
fn eval_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let a = file(
        "a.json",
        "{\"biclusters\":[{\"rows\":[0,1],\"cols\":[0,1]},{\"rows\":[5,6,7],\"cols\":[3]}]}",
    );
    let a_txt = file("a.txt", "rows: 0 1\ncols: 0 1\n\nrows: 5 6 7\ncols: 3\n");
    let far = file("far.json", "{\"biclusters\":[{\"rows\":[20],\"cols\":[20]}]}");
    let half = file("half.json", "{\"biclusters\":[{\"rows\":[0],\"cols\":[0,1]}]}");
    let block = file("block.txt", "rows: 0 1\ncols: 0 1\n");

    assert_eq!(eval_line(&a, &a), "{\"ce\":1.000000}");
    assert_eq!(eval_line(&a, &a_txt), "{\"ce\":1.000000}");
    assert_eq!(eval_line(&far, &a), "{\"ce\":0.000000}");
    assert_eq!(eval_line(&half, &block), "{\"ce\":0.500000}");

    let all = stdout(&ok(&["eval", "--found", s(&half), "--truth", s(&block)]));
    assert_eq!(all, "{\"ce\":0.500000,\"recovery\":0.500000,\"relevance\":0.500000}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, truth) = small_dataset(dir.path());
    let out = dir.path().join("o.json");
    let code = |args: &[&str]| evobic(args).status.code().unwrap();

    let missing = dir.path().join("missing.tsv");
    assert_eq!(code(&["run", "-i", s(&missing), "-o", s(&out)]), 1);
    let ragged = dir.path().join("ragged.tsv");
    fs::write(&ragged, "g\tA\tB\nx\t1\n").unwrap();
    let bad = evobic(&["run", "-i", s(&ragged), "-o", s(&out)]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ragged.tsv:2:"));

    assert_eq!(code(&["run", "-i", s(&matrix), "-o", s(&out), "--overlap", "1.5"]), 2);
    assert_eq!(code(&["run", "-i", s(&matrix), "-o", s(&out), "--threads", "0"]), 2);
    assert_eq!(code(&["run", "-i", s(&matrix), "-o", s(&out), "--pop-size", "0"]), 2);
    assert_eq!(code(&["run", "-i", s(&matrix), "-o", s(&out), "--no-such-flag"]), 2);
    assert_eq!(code(&["run", "-i", s(&matrix), "-o", s(&out), "-n", "many"]), 2);
    assert_eq!(code(&["generate", "--scenario", "nope", "--out", s(dir.path())]), 2);
    assert!(!out.exists());

    let empty = dir.path().join("empty.json");
    fs::write(&empty, "{\"biclusters\":[]}").unwrap();
    let undefined = evobic(&["eval", "--found", s(&empty), "--truth", s(&empty), "--metric", "ce"]);
    assert_eq!(undefined.status.code(), Some(3));
    assert_eq!(stdout(&undefined), "{\"ce\":null}");
    assert_eq!(code(&["eval", "--found", s(&missing), "--truth", s(&truth)]), 1);
    // Only one side empty is still defined.
    assert_eq!(eval_line(&empty, &truth), "{\"ce\":0.000000}");
}

fn bench_args(extra: &[&str]) -> BenchArgs {
    let argv = ["evobic", "bench"].iter().chain(extra);
    match Cli::parse_from(argv).command {
        Sub::Bench(b) => b,
        _ => unreachable!(),
    }
}

/// Two scenarios of five small noiseless replicates each.
fn bench_tree(root: &Path) {
    let common = [
        "--replicates",
        "5",
        "--rows",
        "150",
        "--cols",
        "16",
        "--bic-rows",
        "30",
        "--bic-cols",
        "5",
        "--biclusters",
        "1",
    ];
    let noise = root.join("noise");
    let mut a = vec!["generate", "--scenario", "noise", "--noise", "0", "--out", s(&noise)];
    a.extend(common);
    ok(&a);
    let different = root.join("different");
    let mut b =
        vec!["generate", "--scenario", "different", "--mean-shift", "2", "--out", s(&different)];
    b.extend(common);
    ok(&b);
}

#[test]
fn bench_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("tree");
    bench_tree(&root);
    let results = dir.path().join("results.csv");
    let summary = dir.path().join("summary.csv");
    let args = bench_args(&["--dir", s(&root), "--out", s(&results), "--summary", s(&summary)]);

    let start = Instant::now();
    let records = cmd_bench(&args).unwrap();
    let total = start.elapsed().as_secs_f64();

    assert_eq!(records.len(), 10);
    let per_dataset: f64 = records.iter().map(|r| r.wall_time_seconds).sum();
    assert!(
        (total - per_dataset).abs() <= 0.1 * total,
        "total {total} vs per-dataset {per_dataset}"
    );

    let text = fs::read_to_string(&results).unwrap();
    assert_eq!(text.lines().next().unwrap(), RESULTS_HEADER);
    assert_eq!(text.lines().count(), 11);
    assert_eq!(read_results(&results).unwrap(), records);

    let sums = read_summary(&summary).unwrap();
    assert_eq!(fs::read_to_string(&summary).unwrap().lines().next().unwrap(), SUMMARY_HEADER);
    assert_eq!(sums.len(), 2);
    assert!(sums.iter().all(|s| s.datasets == 5));
    for r in &records {
        assert!(r.wall_time_seconds >= 0.0);
        for m in [r.ce, r.recovery, r.relevance] {
            let m = m.unwrap();
            assert!((0.0..=1.0).contains(&m));
        }
    }
    let noiseless = sums.iter().find(|s| s.scenario == "noise/sigma0").unwrap();
    assert!(noiseless.median_ce.unwrap() >= 0.95, "{noiseless:?}");
}

#[test]
fn bench_records_failures_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("tree");
    ok(&[
        "generate",
        "--scenario",
        "noise",
        "--noise",
        "0",
        "--out",
        s(&root),
        "--replicates",
        "3",
        "--rows",
        "100",
        "--cols",
        "12",
        "--bic-rows",
        "25",
        "--bic-cols",
        "4",
        "--biclusters",
        "1",
    ]);
    fs::write(root.join("sigma0/rep1/matrix.tsv"), "gene\tA\nx\tnot-a-number\n").unwrap();
    let results = dir.path().join("results.csv");
    let records = cmd_bench(&bench_args(&[
        "--dir",
        s(&root),
        "--out",
        s(&results),
        "-n",
        "300",
        "--jobs",
        "2",
    ]))
    .unwrap();
    assert_eq!(records.len(), 3);
    let failed = &records[1];
    assert_eq!(failed.dataset_path, "sigma0/rep1/matrix.tsv");
    assert_eq!((failed.ce, failed.termination), (None, Termination::Budget));
    assert!(records[0].ce.is_some() && records[2].ce.is_some());

    let row = fs::read_to_string(&results).unwrap().lines().nth(2).unwrap().to_string();
    assert_eq!(row.split(',').nth(3), Some(""));
    assert_eq!(read_results(&results).unwrap(), records);

    // The parallel sweep matches the sequential one apart from timing.
    let seq =
        cmd_bench(&bench_args(&["--dir", s(&root), "--out", s(&results), "-n", "300"])).unwrap();
    let strip = |v: &[evobic_cli::bench::BenchRecord]| -> Vec<_> {
        v.iter().map(|r| (r.dataset_path.clone(), r.ce, r.generations, r.termination)).collect()
    };
    assert_eq!(strip(&seq), strip(&records));
}

#[test]
fn bench_of_empty_tree_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("r.csv");
    let records = cmd_bench(&bench_args(&["--dir", s(dir.path()), "--out", s(&results)])).unwrap();
    assert!(records.is_empty());
    assert_eq!(fs::read_to_string(&results).unwrap().trim_end(), RESULTS_HEADER);
}
