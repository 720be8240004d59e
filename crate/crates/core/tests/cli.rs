use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn superlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superlie")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = tmp(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    let ok = superlie(&["check", concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.txt")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("LS13: valid at"));

    let bad = write("bad_jacobi.txt", "superalgebra X dim (2,2)\n[f1,f1] = e1\n[e1,f1] = f1\n");
    let o = superlie(&["check", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("super Jacobi fails"));

    let broken = write("syntax.txt", "superalgebra X dim (2,2)\n[f1,f1 = e1\n");
    let o = superlie(&["check", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(superlie(&["check", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn catalog_show_round_trips_through_check() {
    let o = superlie(&["catalog", "show", "LS19"]);
    assert_eq!(o.status.code(), Some(0));
    let path = write("ls19.txt", &stdout(&o));
    assert_eq!(superlie(&["check", &path]).status.code(), Some(0));
    assert_eq!(superlie(&["catalog", "show", "LS99"]).status.code(), Some(2));
}

#[test]
fn certify_reports_certificates_and_their_absence() {
    let o = superlie(&["certify", "LS3", "LS1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("LS3 ↛ LS1"));
    // A real degeneration has no obstruction.
    assert_eq!(superlie(&["certify", "LS1", "LS3"]).status.code(), Some(1));
}

#[test]
fn cohomology_of_a_rigid_orbit() {
    let o = superlie(&["cohomology", "LS19"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H2 = (0, 1)"));
}

#[test]
fn witness_verification() {
    assert_eq!(superlie(&["witness", "verify", "T3.01", "T4.1"]).status.code(), Some(0));
    assert_eq!(superlie(&["witness", "verify", "no.such.witness"]).status.code(), Some(2));
}

#[test]
fn reproduce_is_deterministic() {
    let run = |tag: &str| {
        let json = tmp(&format!("report_{}.json", tag));
        let dot = tmp(&format!("hasse_{}.dot", tag));
        let o = superlie(&["reproduce", "--json", json.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(json).unwrap(), fs::read(dot).unwrap())
    };
    let (j1, d1) = run("a");
    let (j2, d2) = run("b");
    assert_eq!(j1, j2);
    assert_eq!(d1, d2);
    let v: serde_json::Value = serde_json::from_slice(&j1).unwrap();
    assert_eq!(v["failures"].as_array().map(Vec::len), Some(0));
    assert!(String::from_utf8_lossy(&d1).starts_with("digraph"));
}

#[test]
fn skipping_family_limits_fails_the_run() {
    let json = tmp("report_skip.json");
    let o = superlie(&["reproduce", "--skip-table4", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&fs::read(json).unwrap()).unwrap();
    assert!(!v["failures"].as_array().unwrap().is_empty());
}
