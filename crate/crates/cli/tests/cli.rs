use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::sync::OnceLock;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dgolod"));
    c.env_remove("DGOLOD_FIELD").env_remove("DGOLOD_THREADS");
    c
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn schema() -> &'static jsonschema::JSONSchema {
    static S: OnceLock<jsonschema::JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", "report.schema.json"].iter().collect();
        let raw: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        let leaked: &'static Value = Box::leak(Box::new(raw));
        jsonschema::JSONSchema::compile(leaked).expect("schema compiles")
    })
}

/// Runs with `--json`, validates the report and checks it agrees with the
/// process exit status.
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v: Value = serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}", stdout(&o)));
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?}: schema violations: {msgs:?}\n{v:#}");
    }
    assert_eq!(v["exit_code"].as_i64().unwrap(), i64::from(code(&o)), "{args:?}");
    (code(&o), v)
}

fn check_passed(v: &Value, name: &str) -> bool {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["passed"]
        .as_bool()
        .unwrap()
}

#[test]
fn mode_d_holds_for_two_generator_ideal() {
    let (c, v) = json(&["check", &data("two_gen.txt"), "--mode", "d"]);
    assert_eq!(c, 0);
    assert_eq!(v["results"]["holds"], true);
    assert_eq!(v["results"]["d_generators"], serde_json::json!(["x2"]));
}

#[test]
fn strong_mode_fails_with_witness() {
    let (c, v) = json(&["check", &data("two_gen.txt"), "--mode", "strong"]);
    assert_eq!(c, 1);
    assert_eq!(v["results"]["holds"], false);
    let text = v.to_string();
    assert!(text.contains("x1^2"), "{text}");
    let o = run(&["check", &data("two_gen.txt"), "--mode", "strong"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("x1^2"));
}

#[test]
fn d_sigma_with_explicit_permutation() {
    let (c, v) = json(&["check", &data("stretched_3_3.txt"), "--mode", "d-sigma", "--perm", "3,1,2"]);
    assert_eq!(c, 0, "{v:#}");
    assert_eq!(v["results"]["holds"], true);
}

#[test]
fn d_sigma_searches_for_a_permutation() {
    let (c, v) = json(&["check", &data("stretched_3_3.txt"), "--mode", "d-sigma"]);
    assert_eq!(c, 0, "{v:#}");
    // x2 survives in d_sigma(I) whatever sigma is, and x2^2 is not in I.
    let (c, v) = json(&["check", &data("path.txt"), "--mode", "d-sigma"]);
    assert_eq!(c, 1, "{v:#}");
    assert_eq!(v["results"]["holds"], false);
}

#[test]
fn d_ideal_generators() {
    let (c, v) = json(&["d-ideal", &data("two_gen.txt")]);
    assert_eq!(c, 0);
    assert_eq!(v["command"], "d-ideal");
    let o = run(&["d-ideal", &data("two_gen.txt"), "--perm", "reverse"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn betti_of_path_ideal() {
    let (c, v) = json(&["betti", &data("path.txt"), "--complex"]);
    assert_eq!(c, 0);
    let s = v["results"].to_string();
    assert!(s.contains("[1,2,1]"), "{s}");
}

#[test]
fn non_monomial_input_is_unsupported() {
    let (c, v) = json(&["betti", &data("ci.txt")]);
    assert_eq!(c, 3);
    assert_eq!(v["error"]["kind"], "unsupported");
}

#[test]
fn koszul_cycles_and_verification() {
    let (c, _) = json(&["koszul-cycles", &data("path.txt")]);
    assert_eq!(c, 0);
    let (c, _) = json(&["koszul-cycles", &data("stretched_3_3.txt"), "--i", "2", "--perm", "3,1,2"]);
    assert_eq!(c, 0);
    for what in ["chain", "basis", "zero-map"] {
        let (c, v) = json(&["verify", &data("stretched_3_3.txt"), "--what", what, "--perm", "3,1,2"]);
        assert_eq!(c, 0, "{what}: {v:#}");
    }
    let (c, v) = json(&["verify", &data("ci.txt"), "--what", "zero-map", "--perm", "2,1"]);
    assert_eq!(c, 3, "{v:#}");
}

#[test]
fn verify_with_supplied_complex() {
    let o = run(&["betti", &data("path.txt"), "--complex"]);
    let text = stdout(&o);
    let start = text.find("complex").expect("complex section");
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("path.cx");
    std::fs::write(&cx, &text[start..]).unwrap();
    let (c, v) = json(&["verify", &data("path.txt"), "--what", "chain", "--complex", cx.to_str().unwrap()]);
    assert_eq!(c, 0, "{v:#}");
}

#[test]
fn poincare_stretched_is_golod() {
    let (c, v) = json(&["poincare", &data("stretched_3_3.txt"), "--trunc", "5", "--golod-eq"]);
    assert_eq!(c, 0, "{v:#}");
    assert_eq!(
        v["results"]["series"],
        serde_json::json!(["1", "3", "9", "27", "81", "243"])
    );
    assert!(check_passed(&v, "golod-equality"));
}

#[test]
fn poincare_complete_intersection_is_not_golod() {
    let (c, v) = json(&["poincare", &data("ci.txt"), "--trunc", "5", "--serre", "--golod-eq"]);
    assert_eq!(c, 1, "{v:#}");
    assert_eq!(v["results"]["series"], serde_json::json!(["1", "2", "3", "4", "5", "6"]));
    assert!(check_passed(&v, "serre-inequality"));
    assert!(!check_passed(&v, "golod-equality"));
}

#[test]
fn generator_limit_exits_four() {
    let (c, v) = json(&["poincare", &data("stretched_3_3.txt"), "--max-generators", "3"]);
    assert_eq!(c, 4);
    assert_eq!(v["results"]["stopped_by_limit"], true);
}

#[test]
fn ops_power_round_trips_through_the_parser() {
    let o = run(&["ops", &data("path.txt"), "--op", "power", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let printed = stdout(&o);
    assert!(printed.contains("x1^2*x2^2"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sq.txt");
    std::fs::write(&p, &printed).unwrap();
    let again = run(&["ops", p.to_str().unwrap(), "--op", "closure"]);
    assert_eq!(code(&again), 0);
    assert_eq!(stdout(&again), printed);
}

#[test]
fn all_ops_produce_valid_reports() {
    let two = data("two_gen.txt");
    let path = data("path.txt");
    for args in [
        vec!["ops", &path, "--op", "power", "--k", "3"],
        vec!["ops", &path, "--op", "symbolic", "--k", "2"],
        vec!["ops", &two, "--op", "saturate"],
        vec!["ops", &two, "--op", "colon"],
        vec!["ops", &path, "--op", "closure"],
    ] {
        let (c, v) = json(&args);
        assert_eq!(c, 0, "{args:?}: {v:#}");
    }
    let (c, v) = json(&["ops", &two, "--op", "intersect", "--with", &data("maximal.txt")]);
    assert_eq!(c, 0, "{v:#}");
    let (c, v) = json(&["ops", &two, "--op", "intersect", "--with", &path]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["kind"], "ring_mismatch");
}

#[test]
fn fixtures() {
    let (c, v) = json(&["fixtures", "--name", "paper-d-example"]);
    assert_eq!(c, 0);
    assert_eq!(
        v["results"]["d"],
        serde_json::json!(["x2^3 + x1*x3", "x2*x3^3", "x3*x4", "0"])
    );
    for name in ["stretched:3,2,art", "stretched:3,2,nonart", "sum-family:3,2"] {
        let (c, v) = json(&["fixtures", "--name", name]);
        assert_eq!(c, 0, "{name}: {v:#}");
    }
    let (c, _) = json(&["fixtures", "--name", "nope"]);
    assert_eq!(c, 2);
}

#[test]
fn stretched_fixture_output_is_an_ideal_file() {
    let o = run(&["fixtures", "--name", "stretched:3,3,art"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("st.txt");
    std::fs::write(&p, stdout(&o)).unwrap();
    let (c, v) = json(&["check", p.to_str().unwrap(), "--mode", "d-sigma"]);
    assert_eq!(c, 0, "{v:#}");
    assert_eq!(v["results"]["sigma"], "3,1,2");
}

#[test]
fn parse_errors_carry_positions() {
    let o = run(&["d-ideal", &data("bad_var.txt")]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3:1"), "{err}");
    let (c, v) = json(&["d-ideal", &data("bad_var.txt")]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn missing_file_and_bad_flags_are_usage_errors() {
    assert_eq!(code(&run(&["d-ideal", "/nonexistent/ideal.txt"])), 2);
    assert_eq!(code(&run(&["check", &data("two_gen.txt"), "--mode", "sideways"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn constant_generator_is_rejected() {
    let (c, v) = json(&["check", &data("constant.txt"), "--mode", "d"]);
    assert_eq!(c, 2, "{v:#}");
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["--json", "d-ideal", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read_to_string(data("two_gen.txt")).unwrap().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"], json(&["d-ideal", &data("two_gen.txt")]).1["results"]);
}

#[test]
fn field_override_by_flag_and_environment() {
    let (_, v) = json(&["--field", "F5", "d-ideal", &data("two_gen.txt")]);
    assert!(v["inputs"].to_string().contains("F5"), "{v:#}");
    let o = bin()
        .env("DGOLOD_FIELD", "F7")
        .args(["--json", "d-ideal", &data("two_gen.txt")])
        .output()
        .unwrap();
    assert!(stdout(&o).contains("F7"));
    let (c, v) = json(&["--field", "F4", "d-ideal", &data("two_gen.txt")]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["kind"], "invalid_field");
}

#[test]
fn suite_is_deterministic() {
    let args = ["--json", "--no-timings", "--seed", "7", "suite", "--count", "8"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let (c, v) = json(&["--no-timings", "--seed", "7", "suite", "--count", "8"]);
    assert_eq!(c, 0);
    assert_eq!(v["timings"], serde_json::json!({}));
    assert_eq!(v["seed"], 7);
}

#[test]
fn threads_flag_does_not_change_results() {
    let one = run(&["--threads", "1", "--json", "--no-timings", "poincare", &data("path.txt"), "--trunc", "5"]);
    let many = run(&["--threads", "4", "--json", "--no-timings", "poincare", &data("path.txt"), "--trunc", "5"]);
    assert_eq!(one.stdout, many.stdout);
}
