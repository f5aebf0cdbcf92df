//! End-to-end tests of the command-line driver against the shipped
//! fixtures: exit codes, report determinism and the fixtures manifest.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfgraph"))
        .args(args)
        .current_dir(fixtures_dir())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn faces_on_cube() {
    let out = run(&["faces", "cube.emb"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("faces: 6"), "{text}");
    assert_eq!(text.matches("face ").count(), 6);
}

#[test]
fn genus_reports() {
    let out = run(&["genus", "k6_projective.emb"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("euler-genus: 1"));
    assert!(text.contains("orientable: false"));
    let out = run(&["genus", "torus_7x7.emb"]);
    assert!(stdout(&out).contains("euler-genus: 2"));
}

#[test]
fn width_with_oracle() {
    let out = run(&["width", "projective_grid_4.emb", "--class", "fw", "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("width: 4"));
    assert!(text.contains("oracle-width: 4"));
    assert!(text.contains("chain "), "witness chain line expected: {text}");
}

#[test]
fn width_sphere_unbounded_exits_zero() {
    let out = run(&["width", "cube.emb", "--class", "nsfw"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("width: unbounded"));
}

#[test]
fn torus_widths() {
    let out = run(&["width", "torus_5x5.emb", "--class", "nsfw", "--oracle"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("width: 5"));
    let out = run(&["width", "torus_7x7.emb", "--class", "nsfw"]);
    assert!(stdout(&out).contains("width: 7"));
}

#[test]
fn malformed_file_fails_with_diagnostic() {
    let dir = tempdir();
    let bad = dir.join("bad.emb");
    std::fs::write(&bad, "emb 1\nn 2\ne 0 0 1 x\n").unwrap();
    let out = run(&["faces", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn minor_exit_codes() {
    let dir = tempdir();
    let k7 = dir.join("k7.g6");
    std::fs::write(&k7, surfgraph::graph::to_graph6(&surfgraph::graph::SimpleGraph::complete(7)))
        .unwrap();
    let out = run(&["minor", k7.to_str().unwrap(), "--target", "k6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: found"));
    assert!(stdout(&out).contains("branch 5:"));

    let petersen = dir.join("petersen.g6");
    std::fs::write(&petersen, surfgraph::graph::to_graph6(&surfgraph::fixtures::petersen()))
        .unwrap();
    let out = run(&["minor", petersen.to_str().unwrap(), "--target", "k6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: none"));

    // tiny budget: exit code 3 distinguishes exhaustion
    let out = Command::new(env!("CARGO_BIN_EXE_surfgraph"))
        .args(["minor", "torus_7x7.emb", "--target", "k6"])
        .env("SURFGRAPH_NODE_BUDGET", "10")
        .current_dir(fixtures_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dyw_gate_and_counts() {
    let out = run(&[
        "dyw",
        "projective_grid_4.emb",
        "--expect-count",
        "270",
        "--triangle-free",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("class-size: 270"));
    assert!(text.contains("triangle-free: 8"));

    // a valid embedding that is no gate-passing seed: exit 2
    let out = run(&["dyw", "k6_projective.emb"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let out = run(&["verify", "--suite", "threepath", "--trials", "120", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("violations: 0"));

    let out = run(&["verify", "--suite", "menger", "--trials", "30", "--seed", "7"]);
    assert!(out.status.success());

    let out = run(&["verify", "--suite", "cutwidth", "--trials", "10", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("fixtures: 10"));

    let out = run(&["verify", "--suite", "cylinder", "--trials", "10", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified: 10"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["width", "k6_projective.emb", "--class", "fw"],
        vec!["verify", "--suite", "menger", "--trials", "15", "--seed", "3"],
        vec!["faces", "cube.emb", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(stdout(&a), stdout(&b), "non-deterministic report for {args:?}");
    }
}

#[test]
fn json_reports_parse() {
    let out = run(&["genus", "cube.emb", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["euler-genus"], "0");
    assert!(v["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn fixtures_match_manifest() {
    use sha2::{Digest, Sha256};
    let manifest = std::fs::read_to_string(fixtures_dir().join("manifest.sha256")).unwrap();
    let mut checked = 0;
    for line in manifest.lines() {
        let mut parts = line.split_whitespace();
        let want = parts.next().unwrap();
        let name = parts.next().unwrap().trim_start_matches('*');
        let bytes = std::fs::read(fixtures_dir().join(name)).unwrap();
        let got: String =
            Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(got, want, "fixture {name} drifted from the manifest");
        checked += 1;
    }
    assert!(checked >= 6);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("surfgraph-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
