//! End-to-end tests of the `decycle` binary: exit-status contract, output
//! formats, cache behavior, and the documented flag spellings.

use std::path::PathBuf;
use std::process::{Command, Output};

use decycle::edgelist::write_edge_list;
use decycle::graph6::encode_graph6;
use decycle::report::csv_without_timing;
use decycle_core::product::cartesian_product;
use decycle_core::Graph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decycle"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("decycle-cli-{}-{}", std::process::id(), name));
    std::fs::create_dir_all(&p).unwrap();
    p
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn solve_c4_from_graph6() {
    let c4 = encode_graph6(&Graph::cycle(4).unwrap()).unwrap();
    let out = bin().args(["solve", "--graph6", &c4]).output().unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 1);
    assert_eq!(doc["method"], "branch_reduce");
    assert_eq!(doc["optimality"], "proven");
}

#[test]
fn solve_path_is_zero() {
    let p5 = encode_graph6(&Graph::path(5).unwrap()).unwrap();
    let out = bin().args(["solve", "--graph6", &p5]).output().unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 0);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 0);
}

#[test]
fn solve_torus_from_edge_list() {
    let c3 = Graph::cycle(3).unwrap();
    let torus = cartesian_product(&c3, &c3).unwrap();
    let dir = tmp_dir("edgelist");
    let path = dir.join("torus.txt");
    std::fs::write(&path, write_edge_list(&torus)).unwrap();
    let out = bin()
        .args(["solve", "--edge-list", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_rejects_malformed_graph6() {
    let out = bin()
        .args(["solve", "--graph6", "A\u{20}"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("offset 1"),
        "stderr should report the byte offset: {err}"
    );
}

#[test]
fn sweep_writes_reports_and_caches() {
    let dir = tmp_dir("sweep");
    let cache = dir.join("solver.cache");
    let run = |label: &str| {
        bin()
            .args([
                "sweep",
                "--suite",
                "torus-formula",
                "--out",
                dir.join(label).to_str().unwrap(),
                "--cache",
                cache.to_str().unwrap(),
                "--format",
                "csv",
            ])
            .output()
            .unwrap()
    };
    let first = run("cold");
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let csv1 = std::fs::read_to_string(dir.join("cold/torus-formula.csv")).unwrap();
    let json1: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("cold/torus-formula.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json1["summary"]["fail"], 0);
    assert!(json1["solver_invocations"].as_u64().unwrap() > 0);
    assert!(cache.exists());

    let second = run("warm");
    assert!(second.status.success());
    let csv2 = std::fs::read_to_string(dir.join("warm/torus-formula.csv")).unwrap();
    let json2: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("warm/torus-formula.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(
        json2["solver_invocations"], 0,
        "warm cache must skip the solver"
    );
    assert_eq!(csv_without_timing(&csv1), csv_without_timing(&csv2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_honors_cache_env_var() {
    let dir = tmp_dir("env");
    let cache = dir.join("env.cache");
    let out = bin()
        .args([
            "sweep",
            "--suite",
            "grid-bounds",
            "--out",
            dir.to_str().unwrap(),
        ])
        .env("DECYCLE_CACHE", cache.to_str().unwrap())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(cache.exists(), "DECYCLE_CACHE should supply the cache path");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_rejects_unknown_suite() {
    let out = bin()
        .args(["sweep", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn enumerate_emits_sorted_graph6_trees() {
    let out = bin().args(["enumerate", "--n", "7"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 11);
    let mut codes = Vec::new();
    for line in &lines {
        let g = decycle::graph6::decode_graph6(line).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.order(), 7);
        codes.push(decycle_core::trees::canonical_code(&g).unwrap());
    }
    let mut sorted = codes.clone();
    sorted.sort();
    assert_eq!(codes, sorted, "output must be sorted by canonical code");
}

#[test]
fn certify_star_layer_with_product_export() {
    let dir = tmp_dir("certify");
    let base = dir.join("product");
    let out = bin()
        .args([
            "certify",
            "star-layer",
            "--tree",
            "P4",
            "--star",
            "5",
            "--emit-product",
            base.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 3);
    assert_eq!(doc["construction"], "star_layer");
    assert_eq!(doc["method"], "construction");
    assert_eq!(doc["graph"], "P4 x S5");

    let g6 = std::fs::read_to_string(base.with_extension("g6")).unwrap();
    let product = decycle::graph6::decode_graph6(g6.trim()).unwrap();
    assert_eq!(product.order(), 20);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(base.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["factors"][0], "P4");
    assert_eq!(sidecar["factors"][1], "S5");
    assert!(sidecar["index_convention"]
        .as_str()
        .unwrap()
        .contains("a * 5 + b"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn certify_prism_accepts_tree_codes() {
    let out = bin()
        .args(["certify", "prism", "--tree", "(()()())"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 1, "a star's prism needs one deletion");
    assert_eq!(doc["construction"], "prism_cover");
    assert_eq!(doc["optimality"], "feasible_only");
}

#[test]
fn certify_verify_upgrades_to_cross_checked() {
    let out = bin()
        .args(["certify", "prism", "--tree", "P6", "--verify"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 3);
    assert_eq!(doc["optimality"], "cross_checked");

    // A star smaller than the tree gives a feasible but non-tight set:
    // P5 x S2 is the prism over P5, whose exact value is the matching
    // number 2. The verified output stays feasible-only and reports the
    // exact value separately.
    let out = bin()
        .args([
            "certify",
            "star-layer",
            "--tree",
            "P5",
            "--star",
            "2",
            "--verify",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 4);
    assert_eq!(doc["optimality"], "feasible_only");
    assert_eq!(doc["exact_value"], 2);
}

#[test]
fn solve_with_oracle_method() {
    let c4 = encode_graph6(&Graph::cycle(4).unwrap()).unwrap();
    let out = bin()
        .args(["solve", "--graph6", &c4, "--method", "oracle"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], 1);
    assert_eq!(doc["method"], "oracle");
}

#[test]
fn certify_c4_family_counts_matching_product() {
    let out = bin()
        .args(["certify", "c4-family", "--g1", "P4", "--g2", "C5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["size"], 4, "alpha'(P4) * alpha'(C5) = 2 * 2");
    assert_eq!(doc["family"].as_array().unwrap().len(), 4);
}
