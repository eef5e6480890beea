use std::path::PathBuf;

use feynman_motives::cli::{run, Outcome};
use serde_json::Value;

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/v1").join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn invoke(args: &[&str]) -> Outcome {
    run(std::iter::once("feynman").chain(args.iter().copied()))
}

fn assert_valid(name: &str, out: &Outcome) {
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&out.json).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{}", out.json);
    // Output is also stable text.
    serde_json::to_string(&out.json).unwrap();
}

#[test]
fn every_command_matches_its_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("psi", &["psi", "--graph", "banana:3"]),
        ("psi", &["psi", "--graph", "K4", "--method", "determinant"]),
        ("class", &["class", "banana", "--n", "3", "--check-primes", "2,3,5"]),
        ("class", &["class", "graph-sum", "--n", "2", "--theory", "3", "--primes", "2,3,5"]),
        ("renormalize", &["renormalize", "--graph", "double-bubble", "--character", "nested:c=1"]),
        ("renormalize", &["renormalize", "--graph", "chain-bubble", "--character", "seeded:seed=4", "--order", "4"]),
        ("rg-frame", &["rg-frame", "--max-degree", "4"]),
        ("param", &["param", "--graph", "banana:2", "--D", "3", "--p2", "1", "--samples", "2e4"]),
        ("param", &["param", "--graph", "banana:2", "--D", "3", "--mode", "massive", "--m", "2", "--samples", "100"]),
        ("master", &["master", "--D", "4.5"]),
        ("master", &["master", "--D", "4", "--p2", "2"]),
        ("gamma", &["gamma", "--a", "-2", "--order", "3"]),
        ("frames", &["frames", "--d1", "2", "--d2", "2", "--d12", "1"]),
        ("corpus", &["corpus"]),
    ];
    for (name, args) in cases {
        let out = invoke(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.json);
        assert_valid(name, &out);
    }
}

#[test]
fn documented_examples() {
    let out = invoke(&["psi", "--graph", "banana:3"]);
    assert_eq!(out.json["psi"], "t1*t2 + t1*t3 + t2*t3");
    let out = invoke(&["class", "banana", "--n", "3", "--check-primes", "2,3,5"]);
    assert_eq!(out.json["class"], "L+1");
    let out = invoke(&["renormalize", "--graph", "double-bubble", "--character", "nested:c=1"]);
    assert_eq!(out.json["counterterm"], "1/2*z^-2");
    let out = invoke(&["corpus"]);
    let graphs = out.json["graphs"].as_array().unwrap();
    assert!(graphs.len() >= 10);
    let find = |n: &str| graphs.iter().find(|g| g["name"] == n).unwrap().clone();
    assert_eq!(find("banana:4")["b1"], 3);
    assert_eq!(find("K4")["three_edge_connected"], true);
    let out = invoke(&["master", "--D", "4"]);
    let poles = out.json["pole"]["poles"].as_array().unwrap();
    assert!(poles.iter().any(|p| p == "Γ(D−4)"));
}

#[test]
fn errors_are_json_with_exit_codes() {
    for (args, code) in [
        (vec!["psi", "--graph", "banana:1"], 2),
        (vec!["psi"], 2),
        (vec!["class", "banana", "--n", "3", "--check-primes", "4"], 2),
        (vec!["param", "--graph", "banana:2", "--D", "3", "--samples", "1e3", "--mode", "massless", "--p2", "-1"], 2),
        (vec!["param", "--graph", "banana:2", "--D", "2"], 3),
    ] {
        let out = invoke(&args);
        assert_eq!(out.code, code, "{args:?}: {}", out.json);
        assert_valid("error", &out);
    }
}

#[test]
fn graph_files_and_seeds() {
    let dir = std::env::temp_dir().join(format!("feynman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bubble.json");
    std::fs::write(&path, r#"{"vertices": 2, "edges": [[0,1],[0,1]], "legs": [0,0,1,1], "theory": {"valences": [4]}}"#).unwrap();
    let p = path.to_str().unwrap();
    let out = invoke(&["renormalize", "--graph", p, "--character", "nested:c=2"]);
    assert_eq!(out.code, 0, "{}", out.json);
    assert_eq!(out.json["prepared"], "2*z^-1");
    let a = invoke(&["param", "--graph", "banana:2", "--D", "2.5", "--samples", "5e4", "--seed", "9"]);
    let b = invoke(&["--threads", "3", "param", "--graph", "banana:2", "--D", "2.5", "--samples", "5e4", "--seed", "9"]);
    assert_eq!(a.json["estimate"], b.json["estimate"]);
    assert_eq!(a.json["seed"], 9);
    std::fs::remove_dir_all(&dir).ok();
}
