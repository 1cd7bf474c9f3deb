use std::process::{Command, Output};

fn enriques(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = enriques(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (out.status.code().unwrap(), value)
}

#[test]
fn shipped_graph_passes() {
    let out = enriques(&["check-vinberg", "data/graphs/e8.graph", "--census"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("~E8"));
}

#[test]
fn graphs_resolve_by_stem() {
    let out = enriques(&["census", "e6a2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("~E6+~A2 x1"), "{text}");
    assert!(text.contains("~E7+~A1 x3"), "{text}");
}

#[test]
fn control_fails_with_witness() {
    let (code, v) = structured(&["check-vinberg", "data/controls/broken_triple_edge.graph"]);
    assert_eq!(code, 1);
    assert_eq!(v["exit_code"], 1);
    let failed: Vec<&serde_json::Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| !c["witness"].as_str().unwrap().is_empty()));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = enriques(&["check-vinberg", "no/such/file.graph"]);
    assert_eq!(out.status.code(), Some(2));
    let (code, v) = structured(&["verify-aut", "nowhere.aut"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("nowhere.aut"));
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(enriques(&["blowup-table"]).status.code(), Some(2));
    assert_eq!(enriques(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(enriques(&["conductrix", "(I4*"]).status.code(), Some(2));
}

#[test]
fn blowup_tables_have_six_and_nine_rows() {
    for (pa, rows) in [("0", 6), ("1", 9)] {
        let (code, v) = structured(&["blowup-table", pa]);
        assert_eq!(code, 0);
        assert_eq!(v["data"]["rows"].as_array().unwrap().len(), rows);
    }
}

#[test]
fn small_star_fibration_is_rejected() {
    assert_eq!(enriques(&["fibrations", "(I2*) elliptic"]).status.code(), Some(1));
    assert_eq!(enriques(&["fibrations", "(2I4*, I1) quasi-elliptic"]).status.code(), Some(1));
    assert_eq!(enriques(&["fibrations", "(I17)"]).status.code(), Some(2));
    assert_eq!(enriques(&["fibrations"]).status.code(), Some(0));
}

#[test]
fn conductrix_lookup() {
    let out = enriques(&["conductrix", "quasi-elliptic (2II*)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("4A1 or D4"));
}

#[test]
fn automorphism_spec_by_stem_with_seed() {
    let (code, v) = structured(&["verify-aut", "d8_supersingular", "--seed", "5", "--trials", "3"]);
    assert_eq!(code, 0);
    assert!(v["inputs"].as_array().unwrap().iter().any(|i| i == "seed=5"));
}

#[test]
fn derivation_spec_by_path() {
    let out = enriques(&["verify-derivation", "data/derivations/type_vii.deriv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_all_fails_only_on_the_type_viii_symmetry_order() {
    let (code, v) = structured(&["verify-all"]);
    assert_eq!(code, 1);
    let failed: Vec<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| format!("{} {}", c["name"].as_str().unwrap(), c["witness"].as_str().unwrap()))
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].contains("type_viii") && failed[0].contains("48"), "{failed:?}");
}

#[test]
fn output_is_deterministic() {
    for args in [&["verify-all"][..], &["--format", "structured", "verify-aut", "e6a2_supersingular"][..]] {
        let a = enriques(args);
        let b = enriques(args);
        assert_eq!(a.stdout, b.stdout);
    }
}
