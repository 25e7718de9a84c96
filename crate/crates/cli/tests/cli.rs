use std::io::Write;
use std::process::Command;

use hkcover_cli::{run_with, Options, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["hkcover"];
    argv.extend_from_slice(args);
    let out = run_with(argv, Options::default());
    (out.code, out.stdout)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = run(&a);
    (code, serde_json::from_str(&out).expect("valid JSON"))
}

fn temp_json(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const ZARISKI: &str = r#"{"lattice":{"labels":["h","e"],"gram":[["2","0"],["0","-2"]]},"primes":[{"coeffs":["0","1"]}],"class":{"coeffs":["1","3/2"]}}"#;
const A2: &str = r#"{"lattice":{"labels":["h","a","b"],"gram":[["2","0","0"],["0","-2","1"],["0","1","-2"]]},"classes":[{"coeffs":["0","1","0"]},{"coeffs":["0","0","1"]}]}"#;

#[test]
fn alpha_fifteen() {
    let (code, v) = run_json(&["alpha", "15"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["d"], 15);
    assert_eq!(v["alpha"], 6);
    assert_eq!(v["phi"], 8);
    assert!(v["certificates"]
        .as_object()
        .unwrap()
        .values()
        .all(|c| c == true));
}

#[test]
fn voisin_obstruction_report() {
    let (code, v) = run_json(&["mono-obstruct", "--degree", "16", "--abelian-dim", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["witness_primes"], serde_json::json!([11, 13]));
}

#[test]
fn infeasible_orders_still_exit_zero() {
    let (code, v) = run_json(&["order-bound", "--gl", "8", "11"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["feasible"], false);
    let (code, v) = run_json(&["order-bound", "--abelian", "3", "15"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["certificates"]["min_size_witness_has_exact_order"], true);
    let (code, v) = run_json(&["order-bound", "--gl", "10", "11"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["witness_size"], 10);
    assert_eq!(v["certificates"]["witness_has_exact_order"], true);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let f = temp_json(ZARISKI);
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["alpha", "360"],
        vec!["order-bound", "--gl", "6", "15"],
        vec!["cover-types", "--b2", "23", "--rho", "11"],
        vec!["zariski", path],
        vec!["signature", "--catalog", "K3"],
        vec!["reproduce-paper"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let (_, out) = run(&a);
        let v: Value = serde_json::from_str(&out).unwrap();
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, out, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["reproduce-paper", "--json"],
        vec!["cover-types", "--b2", "23", "--rho", "7"],
    ] {
        assert_eq!(run(&args), run(&args));
    }
}

#[test]
fn timestamps_only_on_request() {
    let (_, plain) = run(&["alpha", "12"]);
    let (_, stamped) = run(&["alpha", "12", "--timestamps"]);
    assert!(!plain.contains("unix time"));
    assert!(stamped.contains("unix time"));
    let (_, json) = run(&["alpha", "12", "--json", "--timestamps"]);
    assert!(!json.contains("unix time"));
}

#[test]
fn malformed_input_exits_two() {
    let (code, v) = run_json(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["error"]["kind"], "UnknownCommand");

    let (code, v) = run_json(&["cover-types", "--b2", "23", "--rho", "30"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["error"]["kind"], "InvalidRho");

    let (code, v) = run_json(&["alpha", "0"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["inputs"]["d"], 0);

    let (code, _) = run(&["order-bound", "15"]);
    assert_eq!(code, EXIT_INPUT);

    let bad = temp_json(r#"{"labels":["x"],"gram":[["0.5"]]}"#);
    let (code, v) = run_json(&["signature", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["error"]["kind"], "ParseError");

    let (code, v) = run_json(&["zariski", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["error"]["kind"], "ParseError");
}

#[test]
fn zariski_file() {
    let f = temp_json(ZARISKI);
    let (code, v) = run_json(&["zariski", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["positive"], serde_json::json!(["1", "0"]));
    assert_eq!(v["negative"], serde_json::json!({"0": "3/2"}));
    assert_eq!(v["negative_names"], serde_json::json!(["D1"]));
    assert_eq!(v["support"], serde_json::json!([0]));
}

#[test]
fn zariski_domain_error() {
    // an isotropic prime cannot be contracted
    let f = temp_json(
        r#"{"lattice":{"labels":["e","f"],"gram":[["0","1"],["1","0"]]},"primes":[{"coeffs":["1","0"]},{"coeffs":["0","1"]}],"class":{"coeffs":["1","-1"]}}"#,
    );
    let (code, v) = run_json(&["zariski", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(v["error"]["kind"].is_string());
}

#[test]
fn exceptional_and_complement_files() {
    let f = temp_json(A2);
    let path = f.path().to_str().unwrap();
    let (code, v) = run_json(&["exceptional", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["q_exceptional"], true);
    let (code, v) = run_json(&["complement", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["basis"], serde_json::json!([["1", "0", "0"]]));
    assert_eq!(v["complement_rank"], 1);
}

#[test]
fn catalog_signatures() {
    let (code, v) = run_json(&["signature", "--catalog", "K3n", "--param", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        v["signature"],
        serde_json::json!({"n_plus": 3, "n_zero": 0, "n_minus": 20})
    );
    let (code, _) = run_json(&["signature", "--catalog", "Leech"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn reproduce_lists_every_check() {
    let (code, human) = run(&["reproduce-paper"]);
    assert_eq!(code, EXIT_OK);
    for c in hkcover_cli::reproduce::manifest().checks {
        assert!(
            human.contains(&c.id) && human.contains(&c.anchor),
            "{}",
            c.id
        );
    }
    assert!(!human.contains("[FAIL]"));
}

#[test]
fn binary_honors_no_color() {
    let out = Command::new(env!("CARGO_BIN_EXE_hkcover"))
        .args(["alpha", "15"])
        .env("NO_COLOR", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("[pass]") && !s.contains('\x1b'));

    let out = Command::new(env!("CARGO_BIN_EXE_hkcover"))
        .arg("nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
