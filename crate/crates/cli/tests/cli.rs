//! End-to-end checks of the binary: every verb, the report formats, and
//! the exit code contract.

use std::path::Path;
use std::process::{Command, Output};

fn steiner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steiner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_prints_a_full_report() {
    let out = steiner(&["solve", "builtin:paper-02"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("instance paper-02 (5 points, d=4)"));
    assert!(text.contains("length   8.86712994"));
    assert!(text.contains("topology "));
    assert!(text.contains("stats    topologies built"));
    assert!(text.contains("time     "));
}

#[test]
fn solve_writes_the_pinned_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = steiner(&[
        "solve",
        "builtin:paper-01",
        "--scheme",
        "original",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in [
        "instance",
        "scheme",
        "length",
        "topology",
        "steiner_points",
        "degenerate_pairs",
        "options",
        "stats",
    ] {
        assert!(parsed.get(key).is_some(), "missing key {key}");
    }
    for key in [
        "topologies_built",
        "optimizations",
        "lower_bounds_computed",
        "reorganizations_taken",
        "nodes_cut",
        "steps_to_first_leaf",
        "wall_time_s",
    ] {
        assert!(parsed["stats"].get(key).is_some(), "missing stats key {key}");
    }
    assert_eq!(parsed["instance"], "paper-01");
    assert_eq!(parsed["scheme"], "original");
    let length = parsed["length"].as_f64().unwrap();
    assert!((length - 4.466396440).abs() < 1e-8, "length {length}");
}

#[test]
fn solve_draws_projected_svg_for_higher_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.svg");
    let out = steiner(&["solve", "builtin:paper-02", "--svg", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("<svg"));
    assert!(body.contains("<circle"));
    assert!(body.contains("<line"));
}

#[test]
fn enumerate_counts_match_the_double_factorial() {
    let dir = tempfile::tempdir().unwrap();
    for (n, want) in [(4, "3"), (5, "15"), (6, "105"), (7, "945")] {
        let path = dir.path().join(format!("n{n}.txt"));
        let rows: Vec<String> = (0..n)
            .map(|i| format!("{} {}", i as f64, (i * i) as f64))
            .collect();
        std::fs::write(&path, rows.join("\n")).unwrap();
        let out = steiner(&["enumerate", path.to_str().unwrap(), "--count-only"]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), want, "count for n={n}");
    }
}

#[test]
fn enumerate_reports_the_brute_force_minimum() {
    let out = steiner(&["enumerate", "builtin:paper-01"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("full topologies 15"));
    assert!(text.contains("minimum length  4.4663964"));
}

#[test]
fn input_errors_exit_with_code_two() {
    assert_eq!(code(&steiner(&["solve", "builtin:paper-01", "--scheme", "bogus"])), 2);
    assert_eq!(code(&steiner(&["solve", "no/such/file.txt"])), 2);
    assert_eq!(code(&steiner(&["solve", "builtin:nope"])), 2);
    assert_eq!(code(&steiner(&["instances", "--dump", "nope"])), 2);
    assert_eq!(code(&steiner(&["bench"])), 2);

    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&steiner(&["bench", dir.path().to_str().unwrap()])), 2);

    let ragged = dir.path().join("ragged.txt");
    std::fs::write(&ragged, "0 0\n1\n").unwrap();
    let out = steiner(&["solve", ragged.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 2 coordinates"));
}

#[test]
fn instances_list_names_the_whole_corpus() {
    let out = steiner(&["instances", "--list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    for name in ["paper-01", "paper-10", "appendix-a", "appendix-a-swapped"] {
        assert!(text.contains(name), "missing {name}");
    }
    // The bare verb defaults to the listing.
    assert_eq!(stdout(&steiner(&["instances"])), text);
}

#[test]
fn dumped_instances_solve_identically_to_their_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let dump = steiner(&["instances", "--dump", "paper-01"]);
    assert_eq!(code(&dump), 0);
    let path = dir.path().join("paper-01.txt");
    std::fs::write(&path, stdout(&dump)).unwrap();

    let from_file = run_json(dir.path(), "a.json", &["solve", path.to_str().unwrap()]);
    let from_builtin = run_json(dir.path(), "b.json", &["solve", "builtin:paper-01"]);
    assert_eq!(from_file["length"], from_builtin["length"]);
    assert_eq!(from_file["topology"], from_builtin["topology"]);
}

fn run_json(dir: &Path, file: &str, args: &[&str]) -> serde_json::Value {
    let path = dir.join(file);
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_owned();
    full.push("--json");
    full.push(&path_str);
    let out = steiner(&full);
    assert_eq!(code(&out), 0);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn bench_is_deterministic_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let mut summaries = Vec::new();
    for file in ["one.json", "two.json"] {
        let path = dir.path().join(file);
        let out = steiner(&[
            "bench",
            "--random",
            "5",
            "2",
            "3",
            "--seed",
            "11",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        assert!(text.contains("aggregate: mean cpu ratio"));
        let parsed: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        summaries.push(parsed);
    }
    let rows = |v: &serde_json::Value| -> Vec<(String, f64, u64, u64)> {
        v["instances"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                (
                    r["instance"].as_str().unwrap().to_owned(),
                    r["length_original"].as_f64().unwrap(),
                    r["lower_bounds_original"].as_u64().unwrap(),
                    r["lower_bounds_enhanced"].as_u64().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(rows(&summaries[0]), rows(&summaries[1]));
}

#[test]
fn bench_reads_instances_from_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["paper-01", "paper-02"] {
        let dump = steiner(&["instances", "--dump", name]);
        std::fs::write(dir.path().join(format!("{name}.txt")), stdout(&dump)).unwrap();
    }
    let out = steiner(&["bench", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("paper-01"));
    assert!(text.contains("paper-02"));
    assert!(
        text.contains("reference lower bounds 14/14"),
        "published counts shown beside the corpus rows"
    );
}
