use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scale-complex"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn facets_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn fvector_outputs() {
    assert_eq!(stdout(&["fvector"]), "1 12 66 208 399 456 282 72 3\n");
    assert_eq!(stdout(&["fvector", "--pitches", "3"]), "1 3 3\n");
    assert_eq!(
        stdout(&["fvector", "--format", "json"]),
        "{\"f_vector\":[1,12,66,208,399,456,282,72,3]}\n"
    );
}

#[test]
fn facets_listing() {
    let text = stdout(&["facets"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 57);
    assert!(lines[0].starts_with("C C# D# E F# G A A#"), "{}", lines[0]);
    assert!(lines.iter().any(|l| l.starts_with("C D E F G A B ")));
    let small = json(&["facets", "--pitches", "6", "--run", "3"]);
    assert_eq!(small["count"], 5);
    assert_eq!(small["facets"][0], serde_json::json!([0, 1, 3, 4]));
}

#[test]
fn classify_table() {
    let text = stdout(&["classify"]);
    let rows: Vec<&str> = text.lines().skip(1).take(7).collect();
    let first: Vec<&str> = rows[0].split_whitespace().collect();
    assert_eq!(first, ["8", "2-1-2-1-2-1-2-1", "3", "diminished"]);
    assert!(text.ends_with("total facets: 57\n"));
    let v = json(&["classify"]);
    let counts: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["scales"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [3, 12, 12, 12, 12, 4, 2]);
}

#[test]
fn homology_of_files() {
    let v = json(&["homology"]);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 0, 0, 0, 0, 3, 0, 0]));
    assert_eq!(v["dims_from"], -1);

    let triangle = facets_file(r#"{"ground_set_size":3,"facets":[[0,1],[1,2],[0,2]]}"#);
    let v = json(&["homology", "--facets-file", triangle.path().to_str().unwrap()]);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 1]));

    let point = facets_file(r#"{"ground_set_size":1,"facets":[[0]]}"#);
    let v = json(&["homology", "--facets-file", point.path().to_str().unwrap()]);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0]));
}

#[test]
fn bad_input_files_are_usage_errors() {
    let garbage = facets_file("{ not json");
    let out = run(&["homology", "--facets-file", garbage.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let wrong_f = facets_file(r#"{"ground_set_size":3,"facets":[[0,1]],"f_vector":[1,3,1]}"#);
    let out = run(&["homology", "--facets-file", wrong_f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["homology", "--facets-file", "/nonexistent/facets.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn collapse_to_dimension_five() {
    let v = json(&["collapse", "--to-dim", "5"]);
    assert_eq!(v["complete"], true);
    assert_eq!(v["f_vector_after"].as_array().unwrap().len(), 7);
    assert_eq!(v["f_vector_after"][6], 213);
    assert_eq!(v["reduced_betti_after"], serde_json::json!([0, 0, 0, 0, 0, 0, 3]));
    assert_eq!(
        v["reduced_betti_before"],
        serde_json::json!([0, 0, 0, 0, 0, 0, 3, 0, 0])
    );
    let log = v["log"].as_array().unwrap();
    assert_eq!(log.len(), 72);
    assert_eq!(log[0]["facet"].as_array().unwrap().len(), 8);
    assert!(stdout(&["collapse"]).contains("largest remaining face has 6 elements"));
}

#[test]
fn spheres_report() {
    let v = json(&["spheres"]);
    let spheres = v["spheres"].as_array().unwrap();
    assert_eq!(spheres.len(), 4);
    assert!(spheres
        .iter()
        .all(|s| s["hexatonics"].as_array().unwrap().len() == 27 && s["certified"] == true));
    let pairs = v["pairwise_intersections"].as_array().unwrap();
    assert_eq!(pairs.len(), 6);
    assert!(pairs.iter().all(|p| p["is_facet"] == true));
    assert_eq!(v["betti_5"], 3);
    let all_four = v["basis_ranks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(all_four["rank"], 3);

    let out = run(&["spheres", "--pitches", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let text = stdout(&["verify"]);
    assert!(
        text.lines()
            .filter(|l| !l.ends_with("checks passed"))
            .all(|l| l.starts_with("PASS ")),
        "{text}"
    );
    let v = json(&["verify"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn capacity_and_usage_exit_codes() {
    assert_eq!(run(&["fvector", "--pitches", "30"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_scale-complex"))
        .args(["fvector"])
        .env("SCALE_COMPLEX_MAX_PITCHES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_scale-complex"))
        .args(["fvector", "--pitches", "14"])
        .env("SCALE_COMPLEX_MAX_PITCHES", "14")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(run(&["fvector", "--pitches", "2"]).status.code(), Some(2));
    assert_eq!(run(&["fvector", "--run", "13"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["collapse", "--to-dim", "-1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["facets"][..],
        &["classify", "--format", "json"],
        &["collapse"],
        &["spheres", "--format", "json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
