use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn inst(name: &str) -> String {
    root().join("instances").join(name).display().to_string()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(root().join("schemas/verdict.schema.json")).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

/// Runs the binary, checks the verdict against the schema, returns (exit code, verdict, raw stdout).
fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_innerhom")).args(args).current_dir(root()).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}"));
    assert!(schema().is_valid(&v), "{args:?} emitted an off-schema verdict: {stdout}");
    (out.status.code().unwrap(), v, stdout)
}

#[test]
fn pi0_positive_comes_with_a_unit() {
    let (code, v, _) = run(&["alg", "pi0", "--a", &inst("m2_f5.json"), "--hom0", &inst("hom_id.json"), "--hom1", &inst("hom_sigma_u.json")]);
    assert_eq!(code, 0);
    assert!(v["witness"]["unit"].is_array());
}

#[test]
fn pi0_negative_is_refuted() {
    let (code, v, _) = run(&[
        "alg",
        "pi0",
        "--a",
        &inst("d2_f5.json"),
        "--b",
        &inst("m2_f5.json"),
        "--hom0",
        &inst("hom_d2_incl.json"),
        "--hom1",
        &inst("hom_d2_scalar.json"),
    ]);
    assert_eq!((code, v["status"].as_str()), (1, Some("refuted")));
}

#[test]
fn cells_and_composites() {
    let m2 = inst("m2_f5.json");
    let good = inst("cell_id_sigma.json");
    assert_eq!(run(&["alg", "check-two-cell", "--a", &m2, "--cell", &good]).0, 0);
    let (code, v, _) = run(&["alg", "check-two-cell", "--a", &m2, "--cell", &inst("cell_bad.json")]);
    assert_eq!(code, 1);
    assert!(v["counterexample"]["basis_index"].is_u64());
    assert_eq!(run(&["alg", "hcompose", "--a", &m2, "--f", &good, "--g", &good]).0, 0);
    // the endpoints of a cell with itself do not chain vertically unless φ0 = φ1
    assert_eq!(run(&["alg", "vcompose", "--a", &m2, "--f", &good, "--g", &good]).0, 1);
}

#[test]
fn interval_and_fermion_commands() {
    let (bump, eps) = (inst("pl_bump.json"), inst("pl_eps.json"));
    let (code, v, _) = run(&["interval", "transport", "--c", &bump, "--eps", &eps]);
    assert_eq!(code, 0);
    assert!(v["witness"]["collar"].is_string());
    assert_eq!(run(&["interval", "class", "--f", &bump]).1["witness"]["trivial"], true);
    assert_eq!(run(&["interval", "lorentz", "--u", "1/2", "--u2", "-1/3"]).0, 0);
    assert_eq!(run(&["interval", "pi0", "--eps0", &eps, "--eps1", &eps]).0, 0);
    assert_eq!(run(&["fermion", "build", "--resolution", "3", "--interval", "0,3"]).1["witness"]["algebra_dim"], 16);
    assert_eq!(run(&["fermion", "witness", "--diffeo", &bump, "--resolution", "2"]).0, 1);
    assert_eq!(run(&["fermion", "antihom", "--pi0", "1,0,2", "--pi1", "0,2,1"]).0, 0);
    assert_eq!(run(&["fermion", "two-functor", "--f", &inst("site_f.json"), "--g", &inst("site_g.json")]).0, 0);
    let (code, v, _) = run(&["modular", "kms", "--rho", &inst("rho3.json"), "--x", &inst("x3.json"), "--y", &inst("y3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"]["opposite_holds"], false);
}

#[test]
fn symbolic_prove_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let (code, v, _) = run(&["symbolic", "prove", "scripts/hcompose_chain.nc", "--trace", trace.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"]["goals"].as_array().unwrap().len(), 4);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(t["goals"][0]["trace"]["steps"].is_array());
    assert_eq!(run(&["symbolic", "prove", "scripts/leading_factor.nc"]).0, 1);
    assert_eq!(run(&["symbolic", "prove", "scripts/two_functor_literal.nc", "--trials", "5"]).0, 2);
}

#[test]
fn input_errors_name_the_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"name\": \"M2\",\n  \"field\": 5\n}\n").unwrap();
    let (code, v, _) = run(&["alg", "pi0", "--a", bad.to_str().unwrap(), "--hom0", &inst("hom_id.json"), "--hom1", &inst("hom_id.json")]);
    assert_eq!(code, 2);
    let msg = v["message"].as_str().unwrap();
    assert!(msg.contains("bad.json:3:"), "{msg}");
    let script = dir.path().join("bad.nc");
    std::fs::write(&script, "symbols a;\nprove a = );\n").unwrap();
    let (code, v, _) = run(&["symbolic", "prove", script.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("bad.nc:2:"));
}

#[test]
fn field_override_and_json_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let status = Command::new(env!("CARGO_BIN_EXE_innerhom"))
        .args(["fermion", "build", "--resolution", "2", "--interval", "0,2", "--json-out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&out)).unwrap()).unwrap();
    assert!(schema().is_valid(&v));
    let (code, v, _) = run(&["--field", "fp:7", "modular", "kms", "--rho", &inst("rho3.json"), "--x", &inst("x3.json"), "--y", &inst("y3.json")]);
    assert_eq!((code, v["status"].as_str()), (2, Some("error")));
}

#[test]
fn timing_is_opt_in() {
    let args = ["interval", "lorentz", "--u", "1/3"];
    assert!(run(&args).1.get("timing_ms").is_none());
    let mut with = vec!["--timing"];
    with.extend(args);
    assert!(run(&with).1["timing_ms"].is_u64());
}

#[test]
fn selftest_is_byte_identical() {
    let (code, v, first) = run(&["selftest", "--seed", "7"]);
    assert_eq!(code, 0, "{first}");
    assert_eq!(v["witness"]["seed"], 7);
    let (_, _, second) = run(&["selftest", "--seed", "7"]);
    assert_eq!(first, second);
}
