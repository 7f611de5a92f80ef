//! CLI acceptance: golden-file regression for the (3,2) emitters, the JSON
//! matrix round-trip, and the exit-code contract.

use ospq::gtensor::{assemble_r, SigmaTildeSource};
use ospq::qring::RatFunc;
use ospq::rootdata::build_basis;
use ospq::vecrep::GradedMatrix;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ospq"))
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/3_2/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn acceptance_14_golden_files() {
    for (name, args) in [
        ("basis.json", vec!["basis", "--m", "3", "--n", "2"]),
        ("gens.json", vec!["gens", "--m", "3", "--n", "2"]),
        ("sigma.json", vec!["sigma", "--m", "3", "--n", "2"]),
        ("rmat.json", vec!["rmat", "--m", "3", "--n", "2"]),
        (
            "rmat_opposite.json",
            vec!["rmat", "--m", "3", "--n", "2", "--opposite"],
        ),
    ] {
        let (stdout, _, code) = run(&args);
        assert_eq!(code, 0, "{name}");
        assert_eq!(stdout, golden(name), "golden mismatch for {name}");
        // determinism: a second run is byte-identical
        let (again, _, _) = run(&args);
        assert_eq!(stdout, again, "nondeterministic output for {name}");
    }
    println!("acceptance 14a golden files for basis/gens/sigma/rmat at (3,2): PASS");
}

#[test]
fn acceptance_14_matrix_round_trip() {
    // parse(emit(R)) = R entry by entry
    let (stdout, _, code) = run(&["rmat", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let dim = v["dim"].as_u64().unwrap() as usize;
    let grading: Vec<u8> = v["grading"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as u8)
        .collect();
    let mut parsed: GradedMatrix = GradedMatrix::zero(grading);
    assert_eq!(dim, 25);
    for e in v["entries"].as_array().unwrap() {
        let r = e["r"].as_u64().unwrap() as usize;
        let c = e["c"].as_u64().unwrap() as usize;
        let val: RatFunc = e["v"].as_str().unwrap().parse().unwrap();
        parsed.set(r, c, val);
    }
    let spec = build_basis(3, 2).unwrap();
    assert_eq!(parsed, assemble_r(&spec, SigmaTildeSource::Closed));
    println!("acceptance 14b JSON matrix round-trip: PASS");
}

#[test]
fn acceptance_14_exit_codes() {
    // 0: a passing suite
    let (_, _, code) = run(&["verify", "ybe", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    // 0: numeric smoke mode
    let (_, _, code) = run(&[
        "verify",
        "appendix",
        "--m",
        "3",
        "--n",
        "4",
        "--numeric",
        "s=7/3",
    ]);
    assert_eq!(code, 0);
    // 1: the closed route refuses the degenerate vector-module weight
    let (_, stderr, code) = run(&[
        "casimir", "--m", "3", "--n", "2", "--power", "1", "--route", "closed",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("degenerate"), "stderr: {stderr}");
    // 2: rank constraint rejected before any computation
    let (_, stderr, code) = run(&["basis", "--m", "2", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("m > 2"), "stderr: {stderr}");
    // 2: malformed flags and values
    let (_, _, code) = run(&["verify", "nonsense", "--m", "3", "--n", "2"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&[
        "casimir", "--m", "3", "--n", "2", "--power", "1", "--lambda", "z9=1",
    ]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&[
        "casimir", "--m", "3", "--n", "2", "--power", "1", "--lambda", "d1=1/3",
    ]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["sigma", "--m", "3", "--n", "2", "--pair", "e1,d1"]);
    assert_eq!(code, 2);
    println!("acceptance 14c exit-code contract 0/1/2: PASS");
}

#[test]
fn sigma_single_pair_output() {
    let (stdout, _, code) = run(&["sigma", "--m", "3", "--n", "2", "--pair", "d1,e1"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout.trim(),
        r#"{"m":3,"n":2,"entries":[{"b":"d1","a":"e1","matrix":{"dim":5,"grading":[1,0,0,0,1],"entries":[{"r":0,"c":1,"v":"1"},{"r":3,"c":4,"v":"-q"}]}}]}"#
    );
    // the self-bar pair through the zero-weight pivot
    let (stdout, _, code) = run(&["sigma", "--m", "3", "--n", "2", "--pair", "e1,-e1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""v":"q - 1""#), "{stdout}");
}

#[test]
fn casimir_operator_route_value() {
    // the quadratic label m - n - 1 vanishes at (3,2), so C_1 acts as 0
    let (stdout, _, code) = run(&[
        "casimir", "--m", "3", "--n", "2", "--power", "1", "--route", "operator",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["value"].as_str().unwrap(), "0");
    // and acts by q - q^-1 at (4,2)
    let (stdout, _, code) = run(&[
        "casimir", "--m", "4", "--n", "2", "--power", "1", "--route", "operator",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["value"].as_str().unwrap(), "q - q^-1");
}

#[test]
fn verify_reports_counterexample_location_shape() {
    // the JSON schema for suite reports is stable: suite, m, n, passed,
    // identities[{name, passed}]
    let (stdout, _, code) = run(&["verify", "defrel", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["suite"], "defrel");
    assert_eq!(v["passed"], true);
    assert!(v["identities"].as_array().unwrap().len() > 4);
}
