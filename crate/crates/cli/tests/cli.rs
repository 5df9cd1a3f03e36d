use std::process::Command;

use arboreal_cli::run;
use serde_json::Value;

fn ok(args: &[&str]) -> Value {
    let mut argv = vec!["arboreal"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "arboreal/1");
    v
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["arboreal"];
    argv.extend_from_slice(args);
    run(argv).code
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_arboreal")).args(args).output().unwrap()
}

#[test]
fn symbolic_measure_of_a_caterpillar() {
    let v = ok(&["measure", "--tree", "(a,b,(c,d))", "--symbolic"]);
    assert_eq!(v["mu"], "t^3-4*t^2+4*t / t^4-4*t^3+6*t^2-4*t+1");
}

#[test]
fn amalgamation_count() {
    let v = ok(&["amalgamate", "--t1", "(1,2)", "--t2", "(3,4,5)", "--count"]);
    assert_eq!(v["count"], 56);
    let v = ok(&["amalgamate", "--t1", "(1,2)", "--t2", "(1,4,5)", "--count"]);
    assert_eq!(v["count"], 6);
}

#[test]
fn shape_counts_sum_to_total() {
    let v = ok(&["amalgamate", "--t1", "(1,2)", "--t2", "(3,4,5)", "--by-shape"]);
    let mut counts: Vec<u64> = v["by_shape"].as_object().unwrap().values().map(|c| c.as_u64().unwrap()).collect();
    counts.sort_unstable();
    assert_eq!(counts, vec![1, 6, 6, 10, 15, 18]);
}

#[test]
fn amalgamation_listing_has_blocks() {
    let v = ok(&["amalgamate", "--t1", "(a,b)", "--t2", "(a,c)"]);
    let list = v["amalgamations"].as_array().unwrap();
    assert_eq!(list.len(), 2);
    assert!(list.iter().all(|a| a["left"] == serde_json::json!(["a", "b"]) && a["right"] == serde_json::json!(["a", "c"])));
}

#[test]
fn enumeration_counts() {
    assert_eq!(ok(&["enumerate", "--labels", "1,2,3,4,5"])["count"], 26);
    assert_eq!(ok(&["enumerate", "--labels", "1,2,3,4,5", "--max-level", "3"])["count"], 15);
}

#[test]
fn measure_modes() {
    assert_eq!(ok(&["measure", "--tree", "(a,b,c)", "--sub", "(a,b)", "--t", "7/2"])["value"], "-3/5");
    assert_eq!(ok(&["measure", "--tree", "(1,2,3,4)", "--level", "3"])["mu"], "0");
    assert_eq!(ok(&["measure", "--tree", "(1,2)", "--sub", "1", "--infinity"])["value"], "0");
    assert_eq!(ok(&["measure", "--tree", "(1,2,3)", "--sub", "(1,2)", "--infinity"])["value"], "-1");
}

#[test]
fn algebra_examples() {
    let v = ok(&["algebra", "gram", "--tree", "(1,2)"]);
    assert_eq!(v["basis"].as_array().unwrap().len(), 10);
    assert_eq!(v["gram"].as_array().unwrap().len(), 10);
    let id = "(s:1/t:1,s:2/t:2)";
    let product = ok(&["algebra", "compose", "--tree", "(1,2)", "--elem", id, "--with", "2@#5"]);
    let terms = product["product"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["amalgamation"], v["basis"][4]);
    assert_eq!(terms[0]["coeff"], "2");
    let idem = ok(&["algebra", "idempotent", "--tree", "(1,2)", "--elem", id]);
    assert_eq!(idem["is_idempotent"], true);
    assert_eq!(idem["udim"], "t / t^2-2*t+1");
    assert_eq!(ok(&["algebra", "trace", "--tree", "(1,2)", "--elem", id])["trace"], "t / t^2-2*t+1");
    assert_eq!(ok(&["algebra", "minpoly", "--tree", "(1,2)", "--elem", id])["coefficients"], serde_json::json!(["-1", "1"]));
}

#[test]
fn verification_sweeps() {
    assert_eq!(ok(&["verify", "separated", "--max-leaves", "4"])["mismatches"], serde_json::json!([]));
    assert_eq!(ok(&["verify", "measure-axioms", "--max-leaves", "4"])["failures"], serde_json::json!([]));
    let rel = ok(&["verify", "relations", "--max-leaves", "4"]);
    assert!(rel["linear"].as_array().unwrap().iter().all(|r| r["residual_mu"] == "0" && r["residual_theta"] == "0"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&["measure", "--tree", "(a,a)"]), 2);
    assert_eq!(code(&["measure", "--tree", "(a,b"]), 2);
    assert_eq!(code(&["measure", "--tree", "(a,b)", "--symbolic", "--infinity"]), 2);
    assert_eq!(code(&["measure", "--tree", "(a,b)", "--t", "1"]), 2);
    assert_eq!(code(&["enumerate", "--labels", "a,b", "--frobnicate"]), 2);
    assert_eq!(code(&["enumerate", "--labels", "1,2,3,4,5,6,7,8,9,10"]), 2);
    assert_eq!(code(&["paper-check", "--scope", "nope"]), 2);
    assert_eq!(code(&["algebra", "trace", "--tree", "(1,2)"]), 2);
}

#[test]
fn output_is_byte_stable() {
    let args = ["arboreal", "amalgamate", "--t1", "((1,2),3)", "--t2", "(1,4,5)"];
    assert_eq!(run(args).stdout, run(args).stdout);
}

#[test]
fn binary_passes_a_scope() {
    let out = binary(&["paper-check", "--scope", "example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.starts_with("PASS c06"), "{text}");
}

#[test]
fn perturbed_measure_fails_the_amalgamation_checks() {
    let out = binary(&["--perturb-mu", "paper-check", "--scope", "amalgamation"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c02 = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "c02").unwrap();
    assert_eq!(c02["pass"], false);
}
