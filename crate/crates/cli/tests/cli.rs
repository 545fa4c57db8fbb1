use std::path::PathBuf;
use std::process::{Command, Output};

fn horochow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horochow")).args(args).env_remove("HOROCHOW_SPEC_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("horochow-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn g2_document_named(name: &str) -> String {
    let spec = horochow::catalog::builtin_document("g2").unwrap();
    spec.replacen("\"name\": \"g2\"", &format!("\"name\": \"{name}\""), 1)
}

#[test]
fn verify_g2_all() {
    let o = horochow(&["verify", "g2", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let checks = out.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(checks >= 60, "{checks}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_spin7_classical() {
    let o = horochow(&["verify", "spin7", "--classical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "PASS spin7.relation.htau2 hτ²=0"));
}

#[test]
fn verify_json_is_an_array_of_checks() {
    let o = horochow(&["verify", "spin7", "--quantum", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert!(!arr.is_empty());
    assert!(arr.iter().all(|c| c["status"] == "pass" && c["id"].is_string()));
}

#[test]
fn unknown_variety_is_a_usage_error() {
    let o = horochow(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown variety"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(horochow(&["verify", "g2", "--classical", "--quantum"]).status.code(), Some(2));
    assert_eq!(horochow(&["table", "g2", "--basis", "third"]).status.code(), Some(2));
    assert_eq!(horochow(&[]).status.code(), Some(2));
}

#[test]
fn failing_golden_entry_exits_one() {
    let dir = scratch_dir("fail");
    let path = dir.join("broken.json");
    let doc = g2_document_named("broken").replacen("\"rhs\": \"2*s4\"", "\"rhs\": \"3*s4\"", 1);
    std::fs::write(&path, doc).unwrap();
    let o = horochow(&["verify", "broken", "--classical", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL broken.table.first."));
}

#[test]
fn spec_dir_lookup() {
    let dir = scratch_dir("dir");
    std::fs::write(dir.join("mine.json"), g2_document_named("mine")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_horochow"))
        .args(["degrees", "mine"])
        .env("HOROCHOW_SPEC_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("τ'0:56"));
}

#[test]
fn tables() {
    let first = stdout(&horochow(&["table", "g2", "--basis", "first"]));
    assert!(first.lines().any(|l| l == "τ'2·σ2 = 2σ4"));
    assert!(first.lines().any(|l| l == "τ'3·τ'3 = 2σ6"));
    let dual = stdout(&horochow(&["table", "g2", "--basis", "dual"]));
    assert!(dual.lines().any(|l| l == "σ'3·τ3 = -τ6"));
    let quantum = stdout(&horochow(&["table", "spin7", "--quantum"]));
    assert!(quantum.lines().any(|l| l == "τ8·τ = q·σ'4"));
    let ascii = stdout(&horochow(&["--ascii", "table", "g2"]));
    assert!(ascii.lines().any(|l| l == "t'2*s2 = 2s4"));
    assert!(ascii.is_ascii());
}

#[test]
fn table_json() {
    let o = horochow(&["table", "g2", "--basis", "dual", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = v.as_array().unwrap().iter().find(|r| r["a"] == "σ'3" && r["b"] == "τ3").unwrap();
    assert_eq!(row["product"], "-τ6");
}

#[test]
fn spin7_dual_table() {
    let out = stdout(&horochow(&["table", "spin7", "--basis", "dual"]));
    assert!(out.lines().any(|l| l == "σ1·σ2 = σ3⁻ + σ3⁺"));
}

#[test]
fn degrees() {
    let o = horochow(&["degrees", "g2"]);
    assert_eq!(stdout(&o).trim(), "τ'0:56 τ'1:56 τ'2:38 τ'3:10 τ'4:4 τ'5:1 σ2:18 σ3:18 σ4:6 σ5:3 σ6:1 σ7:1");
}

#[test]
fn fundamental_class() {
    let o = horochow(&["fundamental-class", "g2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("2σ[4,1] + 2σ[3,2]"));
    assert!(out.contains("5:0 4,1:2 3,2:4"));
    assert_eq!(horochow(&["fundamental-class", "spin7"]).status.code(), Some(2));
}

#[test]
fn grassmannian_products() {
    assert_eq!(stdout(&horochow(&["grass", "prod", "2", "7", "4,1", "2,2"])).trim(), "0");
    assert_eq!(stdout(&horochow(&["grass", "prod", "2", "8", "4,1", "2,2"])).trim(), "σ[6,3]");
    assert_eq!(horochow(&["grass", "prod", "2", "8", "4,a", "2"]).status.code(), Some(2));
    assert_eq!(horochow(&["grass", "prod", "2", "8", "7,1", "2"]).status.code(), Some(2));
}

#[test]
fn spinor_products() {
    let a = stdout(&horochow(&["spinor", "prod", "3", "3"]));
    let b = stdout(&horochow(&["spinor", "prod", "2,1", "2,1"]));
    assert_eq!(a.trim(), "2γ[4,2]");
    assert_eq!(b.trim(), "γ[4,2]");
    assert_eq!(horochow(&["spinor", "prod", "2,2", "1"]).status.code(), Some(2));
}

#[test]
fn reconstruct_and_semisimple() {
    let r = horochow(&["reconstruct", "g2"]);
    assert_eq!(r.status.code(), Some(0));
    let out = stdout(&r);
    assert!(out.contains("contains_true: yes"));
    assert!(out.contains("solution space dimension:"));
    assert_eq!(out, stdout(&horochow(&["reconstruct", "g2"])));
    let s = stdout(&horochow(&["semisimple", "g2"]));
    assert!(s.contains("degree: 12"));
    assert!(s.contains("semisimple: yes"));
}

#[test]
fn catalog_list() {
    let out = stdout(&horochow(&["catalog", "list"]));
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().any(|l| l.starts_with("5") && l.contains("G2") && l.trim_end().ends_with("g2")));
    let v: serde_json::Value = serde_json::from_slice(&horochow(&["catalog", "list", "--json"]).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}
