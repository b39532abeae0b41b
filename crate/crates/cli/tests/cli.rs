use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zaran(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zaran"))
        .args(args)
        .env_remove("ZARAN_ORACLE_MAX_SIDE")
        .env_remove("ZARAN_ORACLE_MAX_K")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let out = p(dir, name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &out]);
    let o = zaran(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn edge_count(instance: &str) -> usize {
    let o = zaran(&["convert", instance, "--to", "graph"]);
    assert_eq!(code(&o), 0);
    let g: Value = serde_json::from_str(&stdout(&o)).unwrap();
    g["edges"].as_array().unwrap().len()
}

#[test]
fn gen_examples() {
    let d = TempDir::new().unwrap();
    let u = json(Path::new(&gen(&d, "u3.json", &["ugig", "--t", "3"])));
    assert_eq!(u["u"].as_array().unwrap().len() + u["v"].as_array().unwrap().len(), 72);
    assert_eq!(edge_count(&gen(&d, "c.json", &["chain-lb", "--m", "3", "--n", "3", "--k", "2"])), 5);
    let bad = zaran(&["gen", "chain-lb", "--m", "1", "--n", "1", "--k", "3"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn random_is_byte_stable() {
    let args = ["gen", "random", "--class", "gig", "--n", "20", "--m", "20", "--seed", "7"];
    let a = zaran(&args);
    let b = zaran(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = zaran(&["gen", "random", "--class", "gig", "--n", "20", "--m", "20", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn certify_ugig_within_bound() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "ugig-t2.json", &["ugig", "--t", "2"]);
    let cert = p(&d, "ugig-t2.cert.json");
    let o = zaran(&["certify", &inst, "--k", "2", "--out", &cert]);
    assert_eq!(code(&o), 0);
    let c = json(Path::new(&cert));
    assert_eq!(c["kind"], "within_bound");
    assert_eq!(c["bound"], 864);
    let again = zaran(&["certify", &inst, "--k", "2"]);
    assert_eq!(stdout(&again), fs::read_to_string(&cert).unwrap());
    assert_eq!(stdout(&zaran(&["oracle", &inst, "--k", "2"])).trim(), "none");
}

#[test]
fn certify_grid_finds_verified_biclique() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "grid-28.json", &["grid", "--size", "28"]);
    let cert = p(&d, "grid.cert.json");
    assert_eq!(code(&zaran(&["certify", &inst, "--k", "2", "--out", &cert])), 2);
    let c = json(Path::new(&cert));
    assert_eq!(c["kind"], "biclique");
    assert_eq!(c["witness"]["u"].as_array().unwrap().len(), 2);
    let v = zaran(&["oracle", &inst, "--verify", &cert, "--k", "2"]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v).trim(), "valid");
    assert_eq!(code(&zaran(&["oracle", &inst, "--verify", &cert, "--k", "3"])), 1);
}

#[test]
fn tampered_certificate_is_rejected() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "u.json", &["ugig", "--t", "1"]);
    let cert = p(&d, "u.cert.json");
    assert_eq!(code(&zaran(&["certify", &inst, "--k", "2", "--out", &cert])), 0);
    let mut c = json(Path::new(&cert));
    c["steps"].as_array_mut().unwrap().pop();
    fs::write(&cert, c.to_string()).unwrap();
    assert_eq!(code(&zaran(&["oracle", &inst, "--verify", &cert])), 1);
}

#[test]
fn certify_empty_k1() {
    let d = TempDir::new().unwrap();
    let inst = p(&d, "empty.json");
    fs::write(&inst, r#"{"class":"gig","u":[],"v":[]}"#).unwrap();
    let o = zaran(&["certify", &inst, "--k", "1"]);
    assert_eq!(code(&o), 0);
    let c: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c["bound"], 0);
}

#[test]
fn batch_reports_worst_outcome() {
    let d = TempDir::new().unwrap();
    let a = gen(&d, "a.json", &["ugig", "--t", "1"]);
    let b = gen(&d, "b.json", &["grid", "--size", "28"]);
    let out = p(&d, "certs");
    let o = zaran(&["certify", &a, &b, "--k", "2", "--out", &out, "--jobs", "2"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&Path::new(&out).join("a.cert.json"))["kind"], "within_bound");
    assert_eq!(json(&Path::new(&out).join("b.cert.json"))["kind"], "biclique");
    let leftovers: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());

    let broken = p(&d, "broken.json");
    fs::write(&broken, "{").unwrap();
    let o = zaran(&["certify", &a, &broken, &b, "--k", "2", "--out", &out]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.json: error"));
}

#[test]
fn prig_round_trip_through_conv2() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "prig.json", &["random", "--class", "prig", "--m", "12", "--n", "15", "--seed", "3"]);
    assert_eq!(code(&zaran(&["convert", &inst, "--to", "conv2"])), 0);
    let (f1, f2) = (p(&d, "prig.f1.json"), p(&d, "prig.f2.json"));
    let prefix = p(&d, "back");
    assert_eq!(
        code(&zaran(&["convert", &f1, "--to", "decompose", "--with", &f2, "--out", &prefix])),
        0
    );
    let back = json(Path::new(&p(&d, "back.prig.json")));
    assert_eq!(back["u_labels"].as_array().unwrap().len(), 12);
    assert_eq!(back["v_labels"].as_array().unwrap().len(), 15);
    let gig = json(Path::new(&p(&d, "back.gig.json")));
    assert!(gig["u"].as_array().unwrap().is_empty());

    // Labels are natural and the sides come back sorted, so the objects match.
    let orig = json(Path::new(&inst));
    assert_eq!(back["u"], orig["u"]);
    assert_eq!(back["v"], orig["v"]);
}

#[test]
fn chain3_projection_round_trip() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "c3.json", &["random", "--class", "chain3", "--m", "10", "--n", "10", "--seed", "1"]);
    assert_eq!(code(&zaran(&["convert", &inst, "--to", "projections"])), 0);
    let back = p(&d, "back.json");
    let o = zaran(&[
        "convert",
        &p(&d, "c3.ic.json"),
        "--to",
        "assemble",
        "--with",
        &p(&d, "c3.chain.json"),
        "--out",
        &back,
    ]);
    assert_eq!(code(&o), 0);
    let edges = |f: &str| -> BTreeSet<String> {
        let g: Value = serde_json::from_str(&stdout(&zaran(&["convert", f, "--to", "graph"]))).unwrap();
        g["edges"].as_array().unwrap().iter().map(|e| e.to_string()).collect()
    };
    assert_eq!(edges(&inst), edges(&back));
}

#[test]
fn bounds_rows() {
    let row = |class: &str| stdout(&zaran(&["bounds", "--class", class, "--m", "10", "--n", "10", "--k", "3"]));
    assert!(row("chordal").trim().ends_with("bound=40"));
    assert!(row("sr").trim().ends_with("bound=80"));
    assert!(row("chain3").trim().ends_with("bound=180"));
    assert!(row("gig").trim().ends_with("bound=1080"));
    let o = zaran(&["bounds", "--class", "chaind", "--m", "16", "--n", "16", "--k", "2", "--d", "4"]);
    assert!(stdout(&o).trim().ends_with("bound=576"));
    assert_eq!(code(&zaran(&["bounds", "--class", "chaind", "--m", "1", "--n", "1", "--k", "2"])), 1);
}

#[test]
fn oracle_caps_from_environment() {
    let d = TempDir::new().unwrap();
    let inst = gen(&d, "grid.json", &["grid", "--size", "5"]);
    let o = Command::new(env!("CARGO_BIN_EXE_zaran"))
        .args(["oracle", &inst, "--k", "2"])
        .env("ZARAN_ORACLE_MAX_SIDE", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = zaran(&["oracle", &inst, "--k", "2"]);
    assert_eq!(code(&o), 2);
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["u"].as_array().unwrap().len(), 2);
}

#[test]
fn bench_quick_table() {
    let o = zaran(&["bench", "quick"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().next().unwrap().starts_with("class"));
    assert_eq!(s.lines().count(), 9);
    assert!(s.lines().skip(1).all(|l| l.split_whitespace().nth(4) == Some("0")));
}
