use std::fs;
use std::path::Path;

use delpezzo::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
use serde_json::Value;

fn run_in(dir: &Path, args: &[&str]) -> (i32, String) {
    let mut argv = vec!["delpezzo".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(dir.to_str().unwrap().into());
    let mut out = Vec::new();
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn read_json(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn curves_command() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_in(dir.path(), &["curves", "--rank", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(read_json(dir.path(), "curves.json").as_array().unwrap().len(), 27);

    let (code, _) = run_in(dir.path(), &["curves", "--rank", "7"]);
    assert_eq!(code, EXIT_OK);
    let graph = read_json(dir.path(), "graph.json");
    assert_eq!(graph["structural"]["double_edges"], 28);
    let edges = fs::read_to_string(dir.path().join("edges.txt")).unwrap();
    assert_eq!(edges.lines().filter(|l| l.ends_with(" 2")).count(), 28);

    let (code, _) = run_in(dir.path(), &["curves", "--rank", "9"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn certify_command() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_in(
        dir.path(),
        &["certify", "--rank", "6", "--divisor", "[3,-1,-1,-1,-1,-1,-1]"],
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(read_json(dir.path(), "certificate.json")["route"], "GAME");

    let (code, _) = run_in(dir.path(), &["certify", "--rank", "5", "--divisor", "[0,1,0,0,0,0]"]);
    assert_eq!(code, EXIT_USAGE);

    // degree 3 with a contracted curve
    let (code, _) = run_in(dir.path(), &["certify", "--rank", "5", "--divisor", "[1,0,0,0,0,0]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(read_json(dir.path(), "certificate.json")["route"], "CONTRACTION");

    // not nef
    let (code, _) = run_in(dir.path(), &["certify", "--rank", "5", "--divisor", "[3,0,0,0,0,2]"]);
    assert_eq!(code, EXIT_VERIFICATION);

    let (code, _) = run_in(dir.path(), &["certify", "--rank", "5", "--divisor", "[1,0]"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _) = run_in(dir.path(), &["certify", "--rank", "5", "--divisor", "oops"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn low_rank_game_needs_generic_moves() {
    let dir = tempfile::tempdir().unwrap();
    let d = "[3,-1,-1,-1,-1]";
    let (code, _) = run_in(dir.path(), &["certify", "--rank", "4", "--divisor", d]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _) = run_in(
        dir.path(),
        &["certify", "--rank", "4", "--divisor", d, "--allow-generic-moves"],
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn sweep_and_replay_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_in(dir.path(), &["sweep", "--rank", "5", "--max-degree", "6"]);
    assert_eq!(code, EXIT_OK);
    let summary = read_json(dir.path(), "summary.json");
    assert_eq!(summary["routes"]["NOT_NEF"], 0);
    assert_eq!(summary["all_certified"], true);
    let lines = fs::read_to_string(dir.path().join("certificates.jsonl")).unwrap();
    assert_eq!(lines.lines().count() as u64, summary["classes"].as_u64().unwrap());

    let certs = dir.path().join("certificates.jsonl");
    let (code, _) = run_in(dir.path(), &["replay", "--rank", "5", certs.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);

    // a tampered certificate is rejected
    let first: Value = lines
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|v| v["route"] == "GAME")
        .unwrap();
    let mut bad = first.clone();
    bad["detail"]["moves"][0]["captured"] = first["detail"]["start"][0].clone();
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let (code, _) = run_in(dir.path(), &["replay", "--rank", "5", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFICATION);

    let (code, _) = run_in(dir.path(), &["sweep", "--rank", "7", "--max-degree", "3"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = run_in(dir.path(), &["sweep", "--rank", "5", "--max-degree", "2"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn staged_replay_command() {
    let dir = tempfile::tempdir().unwrap();
    for r in ["5", "6", "7"] {
        let (code, _) = run_in(dir.path(), &["replay", "--rank", r]);
        assert_eq!(code, EXIT_OK, "rank {r}");
    }
    let (code, _) = run_in(dir.path(), &["replay", "--rank", "4"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = run_in(dir.path(), &["oracle", "--rank", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let report = read_json(dir.path(), "oracle.json");
    assert_eq!(report["generators"].as_array().unwrap().len(), 5);
    assert_eq!(report["checks"]["x4_quadric_generators"], true);

    let (code, _) = run_in(dir.path(), &["oracle", "--rank", "7", "--check", "27sections"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(read_json(dir.path(), "oracle.json")["twenty_seven_sections"]["holds"], true);

    let (code, _) = run_in(
        dir.path(),
        &["oracle", "--rank", "6", "--divisor", "[3,-1,-1,-1,-1,-1,-1]", "--arithmetic", "prime"],
    );
    assert_eq!(code, EXIT_OK);
    let report = read_json(dir.path(), "oracle.json");
    assert_eq!(report["strand"]["b1"], 0);
    assert_eq!(report["arithmetic"], "prime");
    assert!(report["strand"]["caveat"].is_string());
}

#[test]
fn oracle_rejects_degenerate_points() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    fs::write(&pts, "[[1,0,0],[0,1,0],[1,1,0],[0,0,1]]").unwrap();
    let (code, out) = run_in(dir.path(), &["oracle", "--rank", "4", "--points", pts.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("collinear"));

    fs::write(&pts, "[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
    let (code, _) = run_in(dir.path(), &["oracle", "--rank", "4", "--points", pts.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);

    fs::write(&pts, "[[1,0,0],[0,1,0],[0,0,1],[1,1,1]]").unwrap();
    let (code, _) = run_in(
        dir.path(),
        &["oracle", "--rank", "4", "--points", pts.to_str().unwrap(), "--max-degree", "3"],
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["bogus"]).0, EXIT_USAGE);
    assert_eq!(run_in(dir.path(), &["sweep", "--arithmetic", "float"]).0, EXIT_USAGE);
    assert_eq!(run_in(dir.path(), &["oracle", "--check", "everything"]).0, EXIT_USAGE);
}

#[test]
fn identical_runs_give_identical_artifacts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert_eq!(run_in(dir.path(), &["sweep", "--rank", "6", "--max-degree", "4"]).0, EXIT_OK);
        assert_eq!(run_in(dir.path(), &["oracle", "--rank", "5", "--seed", "4"]).0, EXIT_OK);
    }
    for name in ["certificates.jsonl", "summary.json", "oracle.json"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}
