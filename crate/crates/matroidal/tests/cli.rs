//! End-to-end checks of the command-line interface: subcommands, file
//! formats, JSON reports, and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matroidal"))
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

const K4: &str = "n 4 m 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn kdst_feasible_and_infeasible_both_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let out = bin().args(["kdst", &k4, "--k", "2"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("feasible (size 6)"));
    assert!(text.contains("verified: true"));

    let tree = write(dir.path(), "tree.txt", "n 3 m 2\n0 1\n1 2\n");
    let out = bin().args(["kdst", &tree, "--k", "2"]).output().unwrap();
    assert!(out.status.success(), "reported infeasibility is not an error");
    assert!(String::from_utf8_lossy(&out.stdout).contains("infeasible"));
}

#[test]
fn json_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let json_path = dir.path().join("report.json");
    let out = bin()
        .args(["arboricity", &k4, "--json", json_path.to_str().unwrap(), "--stats-only"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // stats-only hides the class listing but keeps the value line
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("value 2"));
    assert!(!text.contains("class 1:"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["value"], 2);
    assert_eq!(report["verified"], true);
    assert!(report["oracle"]["inserts"].as_u64().unwrap() > 0);
}

#[test]
fn generic_matroid_files_intersect() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = write(dir.path(), "m1.txt", "matroid graphic\nn 3 m 3\n0 1\n1 2\n2 0\n");
    let m2 = write(dir.path(), "m2.txt", "matroid partition\ncolors 0 0 1\ncaps 1 1\n");
    let out = bin().args(["intersect", &m1, &m2]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("size 2"));

    // epsilon mode emits the approximation note
    let out = bin().args(["intersect", &m1, &m2, "--epsilon", "0.5"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("approximation mode"));
}

#[test]
fn union_and_kfold_of_matroid_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "matroid graphic\nn 4 m 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let b = write(dir.path(), "b.txt", "matroid bicircular\nn 4 m 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = bin().args(["union", &g, &b]).output().unwrap();
    assert!(out.status.success());
    let out = bin().args(["kfold", &g, "--k", "2"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("size 6"));
    // vacuous duplication is rejected
    let out = bin().args(["kfold", &g, "--k", "7"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn application_subcommands_run() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    for sub in ["kforest", "kpseudoforest"] {
        let out = bin().args([sub, &k4, "--k", "2"]).output().unwrap();
        assert!(out.status.success(), "{sub} failed");
    }
    for sub in ["pseudoarboricity", "tree-packing", "shannon"] {
        let out = bin().args([sub, &k4]).output().unwrap();
        assert!(out.status.success(), "{sub} failed");
    }
    let out = bin().args(["mixed", &k4, "-f", "1", "-p", "1"]).output().unwrap();
    assert!(out.status.success());
    let colored = write(
        dir.path(),
        "col.txt",
        "n 3 m 3\n0 1 c=0\n1 2 c=1\n2 0 c=2\n",
    );
    let out = bin().args(["colorful-st", &colored]).output().unwrap();
    assert!(out.status.success());
    let out = bin().args(["graphic-intersect", &k4, &k4]).output().unwrap();
    assert!(out.status.success());
    let c4 = write(dir.path(), "c4.txt", "n 4 m 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = bin().args(["bipartite-matching", &c4]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("size 2"));
}

#[test]
fn scheduling_and_linear_intersections() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = write(dir.path(), "jobs.txt", "a 1 2 1 1\nb 1 1 1 2\nc 2 2 2 2\n");
    let out = bin().args(["scheduling-intersect", &jobs]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let a = write(dir.path(), "a.txt", "field 2\n1 0\n0 1\n1 1\n");
    let b = write(dir.path(), "b.txt", "field exact\n1 0\n1 0\n0 1\n");
    let out = bin().args(["linear-intersect", &a, &b]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("size 2"));
}

#[test]
fn forest_deadlines_schedule_is_printed() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "dl.txt",
        "n 4 m 4\n0 1 dl=1\n0 1 dl=3\n1 2 dl=2\n2 3 dl=2\n",
    );
    let out = bin().args(["forest-deadlines", &g]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("size 3"));
    assert!(text.contains("day 1:"));
}

#[test]
fn malformed_inputs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n 2 m 1\n0 7\n");
    let out = bin().args(["arboricity", &bad]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = bin().args(["kdst", &bad, "--k", "0"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["arboricity", dir.path().join("missing.txt").to_str().unwrap()]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn verify_subcommand_passes_quickly() {
    let out = bin().args(["verify", "--trials", "40", "--seed", "9"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("PASS").count(), 4);
    assert!(text.contains("all checks passed"));
}

#[test]
fn bench_subcommand_prints_a_table() {
    let out = bin().args(["bench", "--suite", "basis", "--seed", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("budget"));
    let out = bin().args(["bench", "--suite", "nope"]).output().unwrap();
    assert!(!out.status.success());
}
