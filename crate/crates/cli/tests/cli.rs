use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn invariants_reports() {
    let out = run(&["invariants", &fixture("sunset.json")]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["payload"]["phi"]["exact"], "1/9");
    assert_eq!(v["status"], 0);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);

    let v = json_of(&run(&["invariants", &fixture("point.json")]));
    assert_eq!(v["payload"]["phi"]["exact"], "0");
}

#[test]
fn invalid_inputs_exit_codes() {
    let out = run(&["invariants", &fixture("disconnected.json")]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_of(&out)["payload"]["error"]["kind"], "DisconnectedGraph");
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"b\""));

    let out = run(&["invariants", &fixture("malformed.json")]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["payload"]["error"]["kind"], "Parse");

    assert_eq!(code(&run(&["invariants", &fixture("no-such-file.json")])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn green_values() {
    let v = json_of(&run(&["green", &fixture("loop.json"), "--at", "vertex:v", "--at", "vertex:v"]));
    assert_eq!(v["payload"]["green"]["exact"], "1/48");
    let v = json_of(&run(&["green", &fixture("typeII.json"), "--at", "vertex:a", "--at", "vertex:b"]));
    assert_eq!(v["payload"]["green"]["exact"], "-1/4");

    let p = "edge:e2@1/3";
    let g = json_of(&run(&["green", &fixture("sunset.json"), "--at", p, "--at", p]));
    let f = json_of(&run(&["potential", &fixture("sunset.json"), "--at", p]));
    assert_eq!(g["payload"]["green"]["exact"], f["payload"]["points"][0]["f_minus_c"]["exact"]);

    let out = run(&["green", &fixture("loop.json"), "--at", "vertex:w", "--at", "vertex:v"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_of(&out)["payload"]["error"]["kind"], "UnknownPoint");
    let out = run(&["green", &fixture("loop.json"), "--at", "edge:e@2", "--at", "vertex:v"]);
    assert_eq!(json_of(&out)["payload"]["error"]["kind"], "OffsetOutOfRange");
    assert_eq!(code(&run(&["green", &fixture("loop.json"), "--at", "vertex:v"])), 3);
}

#[test]
fn genus2_catalog() {
    let out = run(&["genus2", "I", "2", "3", "5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["payload"]["closed_form_check"]["equal"], true);
    assert_eq!(v["payload"]["closed_form_check"]["engine"], "40/93");
    assert_eq!(v["payload"]["tropical_leading_term"]["equal"], true);
    assert_eq!(code(&run(&["genus2", "VII", "1"])), 2);
    assert_eq!(code(&run(&["genus2", "IV", "1"])), 3);
    assert_eq!(code(&run(&["genus2", "trivial"])), 0);
}

#[test]
fn hyperelliptic_identities() {
    let out = run(&["hyperelliptic", &fixture("typeII.json"), &fixture("countsII.json")]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    for c in v["payload"]["checks"].as_array().unwrap() {
        assert_eq!(c["exact"], true);
    }
    let out = run(&["hyperelliptic", &fixture("typeII.json"), &fixture("countsII_wrong.json")]);
    assert_eq!(code(&out), 5);
    assert_eq!(json_of(&out)["status"], 5);
}

#[test]
fn fit_is_deterministic() {
    let a = run(&["fit", &fixture("sunset.json"), "--seed", "9"]);
    let b = run(&["fit", &fixture("sunset.json"), "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["payload"]["transcript"]["seed"], 9);
    assert_eq!(v["payload"]["multiplier"], "kirchhoff-squared");
}

#[test]
fn oracle_ladder() {
    let out = run(&["oracle", &fixture("sunset.json"), "--orders", "8,16,32,64"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    for r in v["payload"]["ratios"].as_array().unwrap().iter().skip(1) {
        assert!((r.as_f64().unwrap() - 4.0).abs() < 0.01);
    }
    let strict = run(&["oracle", &fixture("sunset.json"), "--orders", "8,16,32,64", "--tolerance", "1e-6"]);
    assert_eq!(code(&strict), 5);
    let csv = run(&["oracle", &fixture("sunset.json"), "--orders", "8,16", "--csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("order,approximation,error,ratio\n8,"));
}

#[test]
fn probe_subdivide_validate() {
    let v = json_of(&run(&["probe", &fixture("loop.json"), "--from", "vertex:v", "--edge", "e", "--step", "1/256"]));
    assert_eq!(v["payload"]["constant"], -0.5);
    let out = run(&["subdivide", &fixture("sunset.json"), "--trials", "3", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["payload"]["passed"], true);
    let v = json_of(&run(&["validate", &fixture("sunset.json")]));
    assert_eq!(v["payload"]["stable"], true);
}

#[test]
fn deterministic_output_and_decimal() {
    let a = run(&["invariants", &fixture("sunset.json"), "--decimal", "3"]);
    let b = run(&["invariants", &fixture("sunset.json"), "--decimal", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["payload"]["phi"]["decimal"], "0.111");
}
