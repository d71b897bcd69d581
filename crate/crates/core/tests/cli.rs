use std::process::Command;

use gm_quant::suite::{run_suite, Status};

fn gmq(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gmq"))
        .args(args)
        .env_remove("GMQ_SEED")
        .output()
        .expect("gmq runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn suites_are_deterministic() {
    let a = run_suite("darboux", 7).unwrap();
    let b = run_suite("darboux", 7).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn exit_status_follows_failures() {
    let rep = run_suite("reduction", 7).unwrap();
    assert!(rep.passed());
    assert_eq!(gmq(&["verify", "reduction", "--seed", "7"]).0, 0);
    let rep = run_suite("k3", 7).unwrap();
    assert_eq!(rep.passed(), rep.records.iter().all(|r| r.status != Status::Fail));
    assert_eq!(gmq(&["verify", "k3"]).0, if rep.passed() { 0 } else { 1 });
    assert_eq!(gmq(&["verify", "bogus"]).0, 2);
    assert_eq!(gmq(&["frobnicate"]).0, 2);
}

#[test]
fn expression_commands() {
    let (code, out) = gmq(&["expr", "eval", "--model", "cone", "-e", "sqrt(s1)*s3"]);
    assert_eq!((code, out.trim()), (0, "s1*s2^{1/2}"));
    let (code, out) = gmq(&["bracket", "--model", "cone", "-f", "s1", "-g", "s2"]);
    assert_eq!((code, out.trim()), (0, "4*s3"));
    let (code, out) = gmq(&["star", "--model", "cone", "--order", "2", "-f", "s1", "-g", "s2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["t^0: s1*s2", "t^1: 4*s3", "t^2: 2"]);
    assert_eq!(gmq(&["expr", "eval", "--model", "cone", "-e", "s1 ^"]).0, 2);
    assert_eq!(gmq(&["bracket", "--model", "torus", "-f", "1", "-g", "1"]).0, 2);
    assert_eq!(gmq(&["assoc", "--model", "cone", "--order", "3", "--trials", "2", "--seed", "1"]).0, 0);
}

#[test]
fn models_listed() {
    let (code, out) = gmq(&["models", "list"]);
    assert_eq!(code, 0);
    for name in gm_quant::models::model_names() {
        assert!(out.contains(name));
    }
}

#[test]
fn json_report_written() {
    let dir = std::env::temp_dir().join(format!("gmq-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conv.json");
    let (code, _) = gmq(&["converge", "--grid", "0.1:0.2:2,0.05:0.1:2", "--order", "12", "--truncation", "12", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for p in v["points"].as_array().unwrap() {
        for key in ["s_norm", "t", "order", "last_term", "ratio", "tail_bound", "verdict"] {
            assert!(p.get(key).is_some(), "{key}");
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
