use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn gradalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradalg")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

struct Files {
    _dir: tempfile::TempDir,
    ring: String,
    k: String,
    free: String,
    dir: PathBuf,
}

fn files() -> Files {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(
        dir.path(),
        "e.json",
        r#"{"field": {"kind": "prime-field", "p": 101},
            "vars": [{"name": "x", "weight": 1}, {"name": "y", "weight": 1}],
            "relations": ["x^2", "y^2"]}"#,
    );
    let k = write(dir.path(), "k.json", r#"{"targets": [0], "sources": [1, 1], "entries": [["x", "y"]]}"#);
    let free = write(dir.path(), "free.json", r#"{"targets": [0, 1]}"#);
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Files {
        dir: dir.path().to_path_buf(),
        _dir: dir,
        ring: s(ring),
        k: s(k),
        free: s(free),
    }
}

#[test]
fn ring_info_reports_invariants() {
    let f = files();
    let out = gradalg(&["ring", "info", &f.ring]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["length"], 4);
    assert_eq!(v["type"], 1);
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["hilbert-polynomial"], "1 + 2t + t^2");
}

#[test]
fn resolve_prints_betti_numbers() {
    let f = files();
    let out = gradalg(&["module", "resolve", &f.ring, &f.k, "--steps", "4", "--json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["complex"]["modules"][4].as_array().unwrap().len(), 5);
    let text = gradalg(&["module", "resolve", &f.ring, &f.k]);
    assert!(text.status.success());
    assert!(!text.stdout.is_empty());
}

#[test]
fn tor_and_ext() {
    let f = files();
    let t = json_of(&gradalg(&["tor", &f.ring, &f.k, &f.k, "--lo", "1", "--hi", "3"]));
    assert_eq!(t["entries"].as_array().unwrap().len(), 3);
    let e = json_of(&gradalg(&["ext", &f.ring, &f.free, &f.k, "--lo", "1", "--hi", "3"]));
    assert!(e["entries"].as_array().unwrap().is_empty());
}

#[test]
fn powers_of_free_module() {
    let f = files();
    let s2 = json_of(&gradalg(&["powers", "s2", &f.ring, &f.free]));
    // R ⊕ R(-1): S² = R ⊕ R(-1) ⊕ R(-2)
    assert_eq!(s2["hilbert"], "1 + 3t + 4t^2 + 3t^3 + t^4");
    let w = json_of(&gradalg(&["powers", "wedge2", &f.ring, &f.free]));
    assert_eq!(w["hilbert"], "t + 2t^2 + t^3");
}

#[test]
fn series_checks_and_exit_codes() {
    let f = files();
    let ok = gradalg(&["series", "check", "epsilon", "--eps-r", "1 + t", "--eps-m", "1 + t"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["rhs"], "0");
    let ab = gradalg(&["series", "check", "ab97", "--h-r", "1 + 2t", "--h-c", "2 + t"]);
    assert_eq!(ab.status.code(), Some(0));
    let bad = gradalg(&["series", "check", "ab97", "--h-r", "1 + 2t", "--h-c", "1 + t"]);
    assert_eq!(bad.status.code(), Some(3));
    let hp = gradalg(&["series", "check", "hilbert-poincare", &f.ring, &f.k]);
    assert_eq!(hp.status.code(), Some(0));
    let lemma = gradalg(&["series", "check", "lemma", &f.ring, &f.k]);
    assert_eq!(lemma.status.code(), Some(2));
    let lemma_free = gradalg(&["series", "check", "lemma", &f.ring, &f.free]);
    assert_eq!(lemma_free.status.code(), Some(0));
    let s2 = gradalg(&["series", "check", "poincare-s2", &f.ring, &f.k]);
    assert_eq!(s2.status.code(), Some(0));
}

#[test]
fn ledger_command() {
    let f = files();
    let v = json_of(&gradalg(&["ledger", &f.ring, &f.k]));
    assert_eq!(v["gamma"], "1/2");
    assert!(!gradalg(&["ledger", &f.ring, &f.free]).status.success());
}

#[test]
fn experiment_reports_are_reproducible() {
    let f = files();
    let a = f.dir.join("a.json");
    let b = f.dir.join("b.json");
    let csv = f.dir.join("a.csv");
    let run = |out: &Path| {
        gradalg(&[
            "experiment",
            "m3zero",
            "--seed",
            "42",
            "--trials",
            "30",
            "--out",
            out.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ])
    };
    assert_eq!(run(&a).status.code(), Some(0));
    assert_eq!(run(&b).status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 31);
    let v: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["summary"]["trials"], 30);
}

#[test]
fn bad_input_is_an_error() {
    let f = files();
    let broken = write(&f.dir, "broken.json", "{");
    let out = gradalg(&["ring", "info", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let short = gradalg(&["experiment", "m3zero", "--window", "3", "--trials", "1"]);
    assert_eq!(short.status.code(), Some(1));
}
