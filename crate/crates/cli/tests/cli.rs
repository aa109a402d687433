use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn augmis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augmis"))
        .args(args)
        .env_remove("AUGMIS_CATALOG_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn manifest(out: &Output) -> Value {
    let line = stderr(out)
        .lines()
        .rev()
        .find(|l| l.starts_with("{\"manifest\""))
        .expect("a manifest line on stderr")
        .to_string();
    serde_json::from_str::<Value>(&line).unwrap()["manifest"].clone()
}

fn solve_json(target: &str, extra: &[&str]) -> Value {
    let mut args = vec!["solve", target, "--json", "--catalog-n-max", "9"];
    args.extend_from_slice(extra);
    let out = augmis(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

fn first_number(out: &Output) -> usize {
    stdout(out).lines().next().unwrap().trim().parse().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_cycle_plain_and_json() {
    let out = augmis(&["solve", "C5", "--p", "3", "--catalog-n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("alpha 2\n"));
    let m = manifest(&out);
    assert_eq!(m["command"], "solve");
    assert_eq!(m["result"]["alpha"], 2);

    let v = solve_json("C5", &[]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, ["alpha", "finders", "iterations", "set", "violations"]);
    let finders: Vec<&String> = v["finders"].as_object().unwrap().keys().collect();
    assert_eq!(finders.len(), 3);
    for key in ["path", "tree", "catalog"] {
        assert!(v["finders"][key].is_u64());
    }
    assert_eq!(v["alpha"], 2);
    let set: Vec<u64> = v["set"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(set.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn line_graph_of_k4_matches_matching() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lk4.txt");
    let out = augmis(&["gen", "--line-graph", "K4", "--out", path_str(&file)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.contains("p edge 6 12\n"));
    let v = solve_json(path_str(&file), &[]);
    let matching = augmis(&["oracle", "--matching", "K4"]);
    assert_eq!(v["alpha"].as_u64().unwrap() as usize, first_number(&matching));
    assert_eq!(first_number(&matching), 2);
}

#[test]
fn planted_instances_solve_to_the_oracle_value() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, p) in [("k=4,p=2", "2"), ("k=5,p=3,extras=2", "3"), ("k=5,p=3,extras=1,noise=3", "3")] {
        let file = dir.path().join("plant.txt");
        let out = augmis(&["gen", "--plant", spec, "--seed", "7", "--out", path_str(&file)]);
        assert!(out.status.success(), "{spec}: {}", stderr(&out));
        let v = solve_json(path_str(&file), &["--p", p]);
        let oracle = augmis(&["oracle", "--mis", path_str(&file)]);
        assert_eq!(v["alpha"].as_u64().unwrap() as usize, first_number(&oracle), "{spec}");
    }
}

#[test]
fn class_violation_exits_two() {
    let out = augmis(&["solve", "K(3,3)", "--validate-class", "--catalog-n-max", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("K(3,3)"));
    let out = augmis(&["solve", "K(3,3)", "--catalog-n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "p edge 3 2\ne 1 2\ne 2 2\n").unwrap();
    let out = augmis(&["solve", path_str(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert!(manifest(&out)["result"]["error"].is_string());

    let missing = augmis(&["solve", path_str(&dir.path().join("absent.txt"))]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn random_generation_needs_seed_and_is_reproducible() {
    let out = augmis(&["gen", "--random", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let out = augmis(&["gen", "--plant", "k=4,p=2,noise=2"]);
    assert_eq!(out.status.code(), Some(1));

    let a = augmis(&["gen", "--random", "14", "--density", "0.4", "--seed", "11"]);
    let b = augmis(&["gen", "--random", "14", "--density", "0.4", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(manifest(&a)["seed"], 11);
    let text = stdout(&a);
    let g = augmis::io::parse_dimacs(&text).unwrap();
    assert_eq!(augmis::io::write_dimacs(&g), text);
}

#[test]
fn atlas_census_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let one = augmis(&["atlas", "--n-max", "1", "--out", path_str(&dir.path().join("a1"))]);
    assert_eq!(stdout(&one), "census 1:1\n");
    let three = augmis(&["atlas", "--n-max", "3", "--out", path_str(&dir.path().join("a3"))]);
    assert_eq!(stdout(&three), "census 1:1 3:1\n");

    let args = |name: &str| {
        vec![
            "atlas".to_string(),
            "--n-max".into(),
            "7".into(),
            "--filters".into(),
            "P(8),T(4),K(3,3)".into(),
            "--out".into(),
            dir.path().join(name).to_str().unwrap().into(),
        ]
    };
    for name in ["x", "y"] {
        let a: Vec<String> = args(name);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert!(augmis(&refs).status.success());
    }
    let x = fs::read(dir.path().join("x")).unwrap();
    assert_eq!(x, fs::read(dir.path().join("y")).unwrap());
    assert!(String::from_utf8(x).unwrap().starts_with("# irreducible catalog\n"));

    let too_big = augmis(&["atlas", "--n-max", "15"]);
    assert_eq!(too_big.status.code(), Some(1));
}

#[test]
fn catalog_cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_augmis"))
        .args(["solve", "P(5)", "--catalog-n-max", "7"])
        .env("AUGMIS_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let cached = files[0].as_ref().unwrap().path();

    let again = augmis(&["solve", "P(5)", "--json", "--catalog", path_str(&cached)]);
    assert!(again.status.success(), "{}", stderr(&again));
    let v: Value = serde_json::from_str(stdout(&again).trim()).unwrap();
    assert_eq!(v["alpha"], 3);
}

#[test]
fn verify_reports() {
    let out = augmis(&["verify", "--lemma", "ramsey", "--t", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("N(2,2) = 3"));

    let out = augmis(&["verify", "--lemma", "path-or-cycle", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("path-or-cycle: 0 violations"));

    let out = augmis(&["verify", "--lemma", "anatomy", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));

    let out = augmis(&["verify", "--lemma", "min-classes", "--n-max", "7", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = augmis(&["verify", "--lemma", "extension", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_values() {
    assert_eq!(first_number(&augmis(&["oracle", "--mis", "C5"])), 2);
    assert_eq!(first_number(&augmis(&["oracle", "--mis", "Petersen"])), 4);
    assert_eq!(first_number(&augmis(&["oracle", "--matching", "Petersen"])), 5);
    assert_eq!(first_number(&augmis(&["oracle", "--matching", "P5"])), 2);
}
