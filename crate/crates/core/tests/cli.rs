use serde_json::{json, Value};
use tamequot::cli::{run, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK};

fn call(args: &[&str]) -> (i32, Value) {
    let argv = std::iter::once("tamequot").chain(args.iter().copied());
    let (code, out) = run(argv);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    (code, value)
}

#[test]
fn quotient_of_the_cone() {
    let (code, v) = call(&["quotient", "--r", "2", "--weights", "1,1"]);
    assert_eq!(code, EXIT_OK);
    let names: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["s", "b", "c"]);
    assert_eq!(v["relations"][0]["text"], "s*c = b^2");
    assert_eq!(v["uniformizer"], "s");
    assert_eq!(v["certificates"], json!({"generation": true, "connectivity": true}));
}

#[test]
fn serre_report_shape() {
    let (code, v) = call(&["serre", "--model", "affine:1", "--r", "2", "--weights", "1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v, json!({"serre_lhs": 1, "serre_rhs": 1, "pass": true}));
}

#[test]
fn wild_diagonalization_is_a_validation_error() {
    let (code, v) = call(&["diagonalize", "--p", "2", "--r", "2", "--vars", "x,y", "--images", "x; x + y"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "TameViolation");
}

#[test]
fn diagonalize_with_pinned_uniformizer() {
    // t -> 2t, x -> 4x + t over F_7 has order 3
    let (code, v) = call(&[
        "diagonalize", "--p", "7", "--r", "3", "--trunc", "4", "--images", "2*t; 4*x + t", "--pin", "t@1",
    ]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["mu"], 2);
    assert_eq!(v["weights"], json!([1, 2]));
    assert_eq!(v["parameters"][0]["series"], "t");
}

#[test]
fn fixed_locus_and_classes() {
    let (code, v) = call(&["fixed-locus", "--model", "projective:1", "--r", "2", "--weights", "1,0,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["class"], json!([2]));
    assert_eq!(v["components"][0]["parts"][0]["weight_value"], 0);

    let (_, v) = call(&["fixed-locus", "--model", "torus:1", "--r", "2", "--weights", "1,1"]);
    assert_eq!(v["empty"], true);
    assert_eq!(v["has_integral_point"], false);

    let (_, v) = call(&["special-fiber", "--model", "affine:1,torus:1", "--r", "2", "--weights", "1,1,0"]);
    assert_eq!(v["class_of_special_fiber"], json!([0, -1, 1]));
}

#[test]
fn special_fiber_presentation() {
    let (code, v) = call(&["special-fiber", "--r", "3", "--weights", "1,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["finite_dimension"], 5);
    let gens: Vec<&str> = v["min_generators"].as_array().unwrap().iter().map(|g| g["monomial"].as_str().unwrap()).collect();
    assert_eq!(gens, ["x0*x1", "x0^3", "x1^3"]);
}

#[test]
fn volume_and_its_errors() {
    let (code, v) = call(&["volume", "--model", "projective:3", "--r", "2", "--weights", "1,0,1,1,0", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((v["s_XL"].as_i64(), v["s_X"].as_i64(), v["pass"].as_bool()), (Some(4), Some(4), Some(true)));

    let (code, v) = call(&["volume", "--model", "affine:1", "--r", "3", "--weights", "1,1", "--q", "2"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "NotQGroup");

    let (code, v) = call(&["serre", "--model", "affine:1", "--r", "4", "--weights", "2,1"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "NotGaloisWeights");
}

#[test]
fn section_and_count() {
    let (code, v) = call(&["section", "--r", "2", "--weights", "1,1", "--p", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["sections"], json!({"s": "s", "b": "0", "c": "0"}));

    let (code, v) = call(&["section", "--r", "1", "--weights", "0,0", "--p", "5", "--point", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["sections"], json!({"s": "s", "b": "3"}));

    let (_, v) = call(&["count", "--r", "2", "--weights", "1,1", "--q", "5"]);
    assert_eq!(v, json!({"q": 5, "counted": 25, "predicted": null, "matched": null}));

    let (_, v) = call(&["count", "--r", "1", "--weights", "0,0,0", "--q", "3"]);
    assert_eq!(v, json!({"q": 3, "counted": 27, "predicted": 27, "matched": true}));

    let (_, v) = call(&["count", "--model", "projective:1", "--r", "2", "--weights", "1,0,1", "--q", "5"]);
    assert_eq!(v, json!({"q": 5, "counted": 6, "predicted": 6, "matched": true}));
}

#[test]
fn sweep_summary() {
    let (code, v) = call(&["sweep", "--seed", "3", "--trials", "5", "--suites", "serre,volume,section"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 3);

    let (code, v) = call(&["sweep", "--suites", "nonsense"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "InvalidInput");
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--seed", "9", "--trials", "4"];
    assert_eq!(run(std::iter::once("tamequot").chain(args)), run(std::iter::once("tamequot").chain(args)));
}

#[test]
fn json_job_specs() {
    let (code, v) = call(&["--json", r#"{"command": "quotient", "r": 3, "weights": [1, 2]}"#]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["relations"][0]["text"], "s*c = b^3");

    let (code, v) = call(&["--json", r#"{"command": "quotient", "r": 3, "weights": [1, 2], "colour": 1}"#]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "InvalidJobSpec");

    let dir = std::env::temp_dir().join(format!("tamequot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    let out = dir.join("out.json");
    std::fs::write(
        &job,
        json!({"command": "serre", "model": "affine:1", "r": 2, "weights": [1, 1], "output": out}).to_string(),
    )
    .unwrap();
    let (code, stdout) = run(["tamequot", "--json", job.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (EXIT_OK, ""));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["pass"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    let (code, v) = call(&[]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "UsageError");
    let (code, v) = call(&["quotient", "--r", "2"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "InvalidInput");
    let (code, v) = call(&["quotient", "--r", "two", "--weights", "1"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"], "UsageError");
    let (code, out) = run(["tamequot", "--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("quotient"));
}

#[test]
fn internal_exit_code_is_distinct() {
    assert_ne!(EXIT_INTERNAL, EXIT_INVALID);
    assert_ne!(EXIT_INTERNAL, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tamequot");
    let out = std::process::Command::new(bin)
        .args(["quotient", "--r", "2", "--weights", "1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["relations"][0]["text"], "s*c = b^2");

    let out = std::process::Command::new(bin)
        .args(["diagonalize", "--p", "2", "--r", "2", "--vars", "x,y", "--images", "x;x+y"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
