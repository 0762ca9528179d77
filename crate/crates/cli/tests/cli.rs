use std::path::{Path, PathBuf};
use std::process::Command;

use girthcycles::graph::read_edge_list;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_girthcycles"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend(["-o", s(&path)]);
    let run = cli(&full);
    assert_eq!(run.code, 0, "{}", run.stderr);
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

#[test]
fn generate_files() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let text = std::fs::read_to_string(&heawood).unwrap();
    assert!(text.lines().any(|l| l == "n 14"));
    let edge_lines = text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('n')).count();
    assert_eq!(edge_lines, 21);
    assert!(text.starts_with("# family: "));

    let c6 = generate(dir.path(), "c6.edg", &["--family", "cycle", "--n", "6"]);
    assert_eq!(read_edge_list(&c6).unwrap().graph.num_edges(), 6);

    let bad = cli(&["generate", "--family", "pg", "--q", "6"]);
    assert_ne!(bad.code, 0);
    assert!(bad.stderr.contains("q must be prime"), "{}", bad.stderr);

    let missing = cli(&["generate", "--family", "kab", "--a", "2"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("--b"));

    let a = cli(&["generate", "--family", "random", "--n", "30", "--seed", "7"]);
    let b = cli(&["generate", "--family", "random", "--n", "30", "--seed", "7"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let report = json(&cli(&["analyze", s(&heawood), "-m", "2"]));
    assert_eq!(report["girth"], 6);
    assert_eq!(report["bipartite"], true);
    assert_eq!(report["regular"], true);
    assert_eq!(report["degree_profile"]["min_degree"], 3);
    assert_eq!(report["edges"], 21);
    assert_eq!(report["below_edge_limit"], true);
    assert!(report["generated_at"].is_u64());

    let c6 = generate(dir.path(), "c6.edg", &["--family", "cycle", "--n", "6"]);
    let report = json(&cli(&["--no-timestamp", "analyze", s(&c6)]));
    assert_eq!(report["girth"], 6);
    assert!(report.get("generated_at").is_none());

    let bad = write(dir.path(), "bad.edg", "n 3\n0 1\n1 x\n");
    let run = cli(&["analyze", s(&bad)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("line 3"), "{}", run.stderr);

    let table = cli(&["--format", "table", "analyze", s(&heawood)]);
    assert!(table.stdout.contains("girth           6"));
}

#[test]
fn reduce_writes_graph_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let out = dir.path().join("reduced.edg");
    let run = cli(&["--no-timestamp", "reduce", s(&heawood), "-m", "2", "-c", "0.35", "-o", s(&out)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json(&run);
    for stage in report["stages"].as_array().unwrap() {
        assert_eq!(stage["removed_vertices"], 0);
        assert_eq!(stage["edges_before"], stage["edges_after"]);
    }
    assert_eq!(report["warnings"].as_array().unwrap().len(), 0);
    let reduced = read_edge_list(&out).unwrap().graph;
    assert_eq!(reduced, read_edge_list(&heawood).unwrap().graph);

    let mut text = std::fs::read_to_string(&heawood).unwrap().replace("n 14", "n 15");
    text.push_str("0 14\n");
    let pendant = write(dir.path(), "pendant.edg", &text);
    let run = cli(&["reduce", s(&pendant), "-m", "2", "-c", "3", "-o", s(&out)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(read_edge_list(&out).unwrap().graph.num_vertices(), 14);

    let empty = write(dir.path(), "empty.edg", "n 5\n");
    let run = cli(&["reduce", s(&empty), "-o", s(&out)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(!json(&run)["warnings"].as_array().unwrap().is_empty());
    assert_eq!(read_edge_list(&out).unwrap().graph.num_vertices(), 0);
}

#[test]
fn census_output_and_budget_guard() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let run = cli(&["census", s(&heawood), "--max-length", "8"]);
    assert_eq!(run.stdout, "{\"6\":28,\"8\":21}\n");

    let c6 = generate(dir.path(), "c6.edg", &["--family", "cycle", "--n", "6"]);
    assert_eq!(cli(&["census", s(&c6), "-L", "10"]).stdout, "{\"6\":1}\n");

    let pg11 = generate(dir.path(), "pg11.edg", &["--family", "pg", "--q", "11"]);
    let run = cli(&["census", s(&pg11), "-L", "14", "--budget", "1000"]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("length 3"), "{}", run.stderr);

    assert_eq!(cli(&["census", s(&c6), "--budget", "0"]).code, 1);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let run = cli(&["verify", s(&heawood), "-m", "2", "-M", "4"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json(&run);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert_eq!(rows[0]["exact"], 28);
    assert_eq!(rows[1]["witness"], 21);

    let pg3 = generate(dir.path(), "pg3.edg", &["--family", "pg", "--q", "3"]);
    assert_eq!(cli(&["verify", s(&pg3), "-m", "2", "-M", "4"]).code, 0);

    let c4 = generate(dir.path(), "c4.edg", &["--family", "cycle", "--n", "4"]);
    let run = cli(&["verify", s(&c4), "-m", "2"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("girth"), "{}", run.stderr);

    // C6 has no 8-cycles, so the second row fails and is reported.
    let c6 = generate(dir.path(), "c6.edg", &["--family", "cycle", "--n", "6"]);
    let run = cli(&["--format", "table", "verify", s(&c6), "-m", "2", "-M", "4"]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.contains("false"));
}

#[test]
fn witness_counts() {
    let dir = tempfile::tempdir().unwrap();
    let heawood = generate(dir.path(), "heawood.edg", &["--family", "pg", "--q", "2"]);
    let out = dir.path().join("w.json");
    let run = cli(&["--no-timestamp", "witness", s(&heawood), "-m", "2", "--ell", "3", "-o", s(&out)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(json(&run)["count"], 28);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["cycles"].as_array().unwrap().len(), 28);

    let run = cli(&["witness", s(&heawood), "--ell", "4", "--count-only"]);
    assert_eq!(json(&run)["distinct"], 21);

    let c6 = generate(dir.path(), "c6.edg", &["--family", "cycle", "--n", "6"]);
    let run = cli(&["--format", "table", "witness", s(&c6), "--ell", "3"]);
    assert_eq!(run.stdout, "1 witnesses of length 6\n");

    let c4 = generate(dir.path(), "c4.edg", &["--family", "cycle", "--n", "4"]);
    assert_eq!(cli(&["witness", s(&c4), "--ell", "3"]).code, 1);
}

#[test]
fn witnesses_never_exceed_census() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4 {
        let g = generate(
            dir.path(),
            &format!("r{seed}.edg"),
            &["--family", "random", "--n", "40", "--girth", "6", "--avg-degree", "4", "--seed", &seed.to_string()],
        );
        let reduced = dir.path().join(format!("b{seed}.edg"));
        assert_eq!(cli(&["reduce", s(&g), "-c", "0.01", "-o", s(&reduced)]).code, 0);
        let census = json(&cli(&["census", s(&reduced), "-L", "10"]));
        for ell in 3..=5 {
            let run = cli(&["witness", s(&reduced), "--ell", &ell.to_string(), "--count-only"]);
            assert_eq!(run.code, 0, "{}", run.stderr);
            let distinct = json(&run)["distinct"].as_u64().unwrap();
            let exact = census[(2 * ell).to_string()].as_u64().unwrap_or(0);
            assert!(distinct <= exact, "seed {seed} ell {ell}: {distinct} > {exact}");
        }
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cli(&["census"]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
    assert_eq!(cli(&["analyze", "/nonexistent/file.edg"]).code, 1);
    assert_eq!(cli(&["--help"]).code, 0);
}
