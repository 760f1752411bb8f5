use std::process::{Command, Output};

use serde_json::Value;

fn gfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfe")).args(args).env_remove("GFE_PRECISION").output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = gfe(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn flatten(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

#[test]
fn classify_catalan() {
    let (v, code) = json(&["classify", "--a", "3", "--b", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Ok");
    let p = &v["payload"];
    assert_eq!(p["i2"], 6);
    assert_eq!(p["i3"], 3);
    assert_eq!(p["curve"], "864b1");
    assert_eq!(p["v2N"], 5);
    assert_eq!(p["jdisk2"]["variant"], "CenterModulus");
    assert_eq!(p["jdisk2"]["params"]["center"], "512");
}

#[test]
fn classify_infeasible_has_witness() {
    let (v, code) = json(&["classify", "--a", "1", "--b", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["i2"], "Infeasible");
    assert_eq!(v["payload"]["witness2"]["kind"], "valuation");
}

#[test]
fn twistplan_row_11() {
    let (v, code) = json(&["twistplan", "--p", "11"]);
    assert_eq!(code, 0);
    let plan = &v["payload"]["plan"];
    for (label, signs) in
        [("27a1", "+"), ("54a1", "+"), ("96a1", "+"), ("288a1", "+-"), ("864a1", "+"), ("864b1", "+"), ("864c1", "+")]
    {
        assert_eq!(plan[label], signs, "{label}");
    }
    assert_eq!(v["payload"]["derivedMatchesTable"], true);
    let (v, _) = json(&["twistplan", "--p", "13", "--derived"]);
    assert!(v["payload"]["plan"]["96a1"]["provenance"].as_array().unwrap().len() >= 1);
}

#[test]
fn verify_known_lists_eight_identities() {
    let (v, code) = json(&["verify-known"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Ok");
    let ids = v["payload"]["identities"].as_array().unwrap();
    assert!(ids.len() >= 8);
    assert_eq!(ids[0]["a"], "13");
    assert_eq!(ids[5]["c"], "43");
}

#[test]
fn search_and_xns() {
    let (v, _) = json(&["search", "--p", "7", "--bound", "100"]);
    let sols = v["payload"]["solutions"].as_array().unwrap();
    assert!(sols.iter().any(|s| s["a"] == "71" && s["b"] == "-17" && s["c"] == "2"));
    let (v, _) = json(&["xns-search", "--d", "-1", "--height", "20"]);
    let pts: Vec<&str> = v["payload"]["points"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(pts.contains(&"inf") && pts.contains(&"5/4"));
}

#[test]
fn level13_and_x011() {
    let (v, _) = json(&["x013-j", "--v", "0"]);
    assert_eq!(v["payload"]["j"], "576");
    let (v, _) = json(&["x013-j", "--v", "inf"]);
    assert_eq!(v["payload"]["j"], "inf");
    let (v, code) = json(&["localsolve", "--coeffs", "1,-4,6,-2,1,-2,1", "--ell", "2", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["soluble"], true);
    assert_eq!(v["payload"]["oracle"], true);
    let (v, code) = json(&["x011", "points"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["points"].as_array().unwrap().len(), 5);
    let (v, _) = json(&["x011", "fj", "--x", "inf", "--j", "inf"]);
    assert_eq!(v["payload"]["vanishes"], true);
}

#[test]
fn galois_commands() {
    let (v, code) = json(&["glgroup", "--p", "11", "--group", "h8"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["quotientOrder"], 24);
    assert_eq!(v["payload"]["census"]["4"], 6);
    let (v, code) = json(&["tate-module", "--ell", "2", "--p", "11", "--e1", "3", "--e2", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["n"], 9);
    assert_eq!(v["payload"]["matrixType"], v["payload"]["criterionType"]);
}

#[test]
fn padic_output_and_precision_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_gfe"))
        .args(["x011", "log", "--t", "4", "--json"])
        .env("GFE_PRECISION", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let log = &v["payload"]["log"];
    assert_eq!(log["ell"], 2);
    assert_eq!(log["val"], "2");
    assert_eq!(log["prec"], 30);
    assert!(log["unit"].is_string());
}

#[test]
fn exit_codes() {
    assert_eq!(gfe(&["classify", "--a", "2", "--b", "4"]).status.code(), Some(1));
    assert_eq!(gfe(&["classify", "--a", "x", "--b", "4"]).status.code(), Some(2));
    assert_eq!(gfe(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(gfe(&["x013-j", "--v", "1/0"]).status.code(), Some(2));
    assert_eq!(gfe(&["localsolve", "--ell", "3"]).status.code(), Some(2));
    assert_eq!(gfe(&["twistplan", "--p", "15"]).status.code(), Some(1));
}

#[test]
fn output_is_stable_and_modes_agree() {
    let args = ["classify", "--a", "-671", "--b", "-56"];
    let a = gfe(&[&args[..], &["--json"]].concat()).stdout;
    let b = gfe(&[&args[..], &["--json", "--threads", "1"]].concat()).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let mut want = Vec::new();
    flatten(&v, "", &mut want);
    let human = String::from_utf8(gfe(&args).stdout).unwrap();
    assert_eq!(human.lines().map(String::from).collect::<Vec<_>>(), want);
}

#[test]
fn verify_paper_fast() {
    let (v, code) = json(&["verify-paper", "--level", "fast"]);
    let crit = v["payload"]["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 15);
    let passed = crit.iter().filter(|c| c["passed"] == true).count();
    assert_eq!(v["payload"]["passed"], passed);
    assert_eq!(code, if passed == 15 { 0 } else { 1 });
}
