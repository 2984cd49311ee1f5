use assert_cmd::Command;
use serde_json::Value;

fn hecke(args: &[&str]) -> assert_cmd::assert::Assert {
    Command::cargo_bin("hecke").unwrap().args(args).assert()
}

fn json(args: &[&str]) -> Value {
    let out = hecke(args).success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn quadratic_relation() {
    let v = json(&["--m", "1", "--n", "2", "--json", "reduce", "G1 G1"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["layers"], serde_json::json!([[0, 0], [0, 0]]));
    assert_eq!(terms[0]["coeff"]["num"], "q - q^-1");
    assert_eq!(terms[1]["layers"], serde_json::json!([[1, 0], [0, 0]]));
    assert_eq!(terms[1]["coeff"]["num"], "1");
}

#[test]
fn tau_commutes_with_far_generators() {
    let a = hecke(&["--n", "3", "--json", "reduce", "T G2"]).success().get_output().stdout.clone();
    let b = hecke(&["--n", "3", "--json", "reduce", "G2 T"]).success().get_output().stdout.clone();
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_with_two() {
    hecke(&["--n", "2", "reduce", "G9"]).code(2);
    hecke(&["--n", "2", "reduce", "G1 X"]).code(2);
    hecke(&["verify", "nonsense"]).code(2);
    hecke(&["--m", "x", "reduce", "T"]).code(2);
    hecke(&["--affine", "verify", "flatness"]).code(2);
}

#[test]
fn size_guard() {
    hecke(&["--m", "3", "--n", "5", "verify", "group"]).code(2);
    hecke(&["--m", "2", "--n", "6", "induce"]).code(2);
}

#[test]
fn element_json_round_trips_through_mul() {
    let x = hecke(&["--m", "2", "--n", "2", "--json", "reduce", "T G1"]).success().get_output().stdout.clone();
    let x = String::from_utf8(x).unwrap();
    let y = json(&["--m", "2", "--n", "2", "--json", "mul", &x, "1"]);
    assert_eq!(y, serde_json::from_str::<Value>(&x).unwrap());
    let z = json(&["--m", "2", "--n", "2", "--json", "mul", "T", "G1"]);
    assert_eq!(z, y);
}

#[test]
fn verify_all_at_two_two() {
    let v = json(&["--m", "2", "--n", "2", "--json", "verify", "all"]);
    assert_eq!(v["passed"], true);
    let anchors: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .map(|c| c["anchor"].as_str().unwrap())
        .collect();
    assert!(anchors.contains(&"quadratic relation"));
    assert!(anchors.contains(&"idempotents"));
}

#[test]
fn verify_fusion_counts_idempotents() {
    let v = json(&["--m", "1", "--n", "3", "--json", "verify", "fusion"]);
    assert_eq!(v["passed"], true);
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    let idem = checks.iter().find(|c| c["anchor"] == "idempotents").unwrap();
    assert_eq!(idem["detail"], "4 idempotents");
}

#[test]
fn injected_bad_rule_fails() {
    hecke(&["--m", "2", "--n", "2", "verify", "relations", "--inject-bad-rule"]).code(1);
    hecke(&["--m", "2", "--n", "2", "verify", "relations"]).code(0);
}

#[test]
fn cosets_of_g312() {
    let v = json(&["--m", "3", "--n", "2", "--json", "cosets"]);
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 6);
    // t cycles the α label, s1 swaps j = 0 and j = 1
    let t = &v["actions"][0];
    assert_eq!(t["letter"], "t");
    assert_eq!(t["image"], serde_json::json!([1, 2, 0, 3, 4, 5]));
    let s = &v["actions"][1];
    assert_eq!(s["letter"], "s1");
    assert_eq!(s["image"], serde_json::json!([3, 4, 5, 0, 1, 2]));
}

#[test]
fn weights_at_gamma_circ() {
    let v = json(&["--m", "1", "--n", "2", "--json", "weights", "--gamma", "circ"]);
    let table = v["weights"].as_array().unwrap();
    assert_eq!(table[0]["lambda"], serde_json::json!([[2]]));
    // q^-1/(q + q^-1) in lowest terms
    assert_eq!(table[0]["w"], serde_json::json!({"num": "1", "den": "q^2 + 1"}));
    assert_eq!(table[1]["lambda"], serde_json::json!([[1, 1]]));
    assert_eq!(table[1]["w"], serde_json::json!({"num": "q^2", "den": "q^2 + 1"}));
    assert_eq!(v["nondegeneracy"]["nondegenerate"], true);
}

#[test]
fn weights_with_bound_gamma() {
    let v = json(&["--m", "2", "--n", "3", "--json", "weights", "--gamma", "g0=1,g1=0"]);
    assert_eq!(v["weights"].as_array().unwrap().len(), 10);
}

#[test]
fn trace_with_generic_d() {
    let v = json(&["--n", "2", "--json", "trace", "G1", "--D", "generic"]);
    assert_eq!(v, serde_json::json!({"num": "D", "den": "1"}));
    let v = json(&["--m", "2", "--n", "1", "--json", "trace", "T", "--mu", "1=q^2"]);
    assert_eq!(v["num"], "q^2");
}

#[test]
fn fusion_of_one_tableau() {
    let v = json(&["--m", "2", "--n", "1", "--json", "fusion", "--tableau", "[[[1]],[]]"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    hecke(&["--m", "1", "--n", "2", "fusion", "--tableau", "[[[1],[2]]]"]).success();
    hecke(&["--m", "1", "--n", "2", "fusion", "--tableau", "[[[2],[1]]]"]).code(2);
    hecke(&["fusion", "--tableau", "[[[2,1]]]"]).code(2);
}

#[test]
fn representations() {
    let v = json(&["--m", "2", "--n", "2", "--json", "induce"]);
    assert_eq!(v["tau"].as_array().unwrap().len(), 8);
    let v = json(&["--m", "2", "--n", "3", "--json", "burau", "--e", "2"]);
    assert_eq!(v["sigmas"].as_array().unwrap().len(), 2);
}

#[test]
fn normal_forms() {
    let v = json(&["--m", "2", "--n", "2", "--json", "normal-form", "s1 t s1 t"]);
    assert_eq!(v["element"]["colors"], serde_json::json!([1, 1]));
    let all = json(&["--m", "2", "--n", "2", "--json", "normal-form"]);
    assert_eq!(all.as_array().unwrap().len(), 8);
}

#[test]
fn specialization_flag() {
    let v = json(&["--m", "2", "--n", "2", "--json", "reduce", "G1 G1", "--q-special", "1"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn output_is_deterministic() {
    let run = || hecke(&["--m", "2", "--n", "3", "--json", "verify", "group", "--seed", "5"]).success().get_output().stdout.clone();
    assert_eq!(run(), run());
}
