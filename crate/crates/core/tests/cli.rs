use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn msts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn construct(dir: &TempDir, name: &str, k: &str, l: &str) -> String {
    let p = path(dir, name);
    let o = msts(&["construct", "--k", k, "--l", l, "-o", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    p
}

fn line_count(p: &str) -> usize {
    fs::read_to_string(p).unwrap().lines().count()
}

#[test]
fn construct_writes_33_codewords() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "d.jsonl", "3", "3");
    assert_eq!(line_count(&p), 34);
    let o = msts(&["construct", "--k", "3", "--l", "3"]);
    assert!(stdout(&o).contains("codewords=33"));
}

#[test]
fn construct_5_5_names_the_condition() {
    let o = msts(&["construct", "--k", "5", "--l", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("5 (mod 6)"), "{}", stderr(&o));
}

#[test]
fn construct_even_and_unsupported() {
    assert_eq!(msts(&["construct", "--k", "2", "--l", "3"]).status.code(), Some(1));
    assert_eq!(msts(&["construct", "--k", "3", "--l", "5"]).status.code(), Some(1));
}

#[test]
fn construct_5_3_uses_example() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "d53.jsonl", "5", "3");
    assert_eq!(line_count(&p), 81);
    assert!(fs::read_to_string(&p).unwrap().contains("example-5-3"));
    let q = path(&dir, "ex.jsonl");
    assert!(msts(&["example", "-o", &q]).status.success());
    assert_eq!(fs::read(&p).unwrap(), fs::read(&q).unwrap());
}

#[test]
fn verify_fresh_design() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "d.jsonl", "3", "3");
    let o = msts(&["verify", &p]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["accepted"], true);
}

#[test]
fn verify_after_deleting_a_line() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "d.jsonl", "3", "3");
    let text = fs::read_to_string(&p).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(5);
    fs::write(&p, lines.join("\n") + "\n").unwrap();
    let o = msts(&["verify", &p]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["accepted"], false);
    assert_eq!(report["uncovered"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_duplicate_line_is_format_error() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "d.jsonl", "3", "3");
    let text = fs::read_to_string(&p).unwrap();
    let dup = text.lines().nth(3).unwrap().to_owned();
    fs::write(&p, format!("{text}{dup}\n")).unwrap();
    assert_eq!(msts(&["verify", &p]).status.code(), Some(2));
}

#[test]
fn verify_malformed_and_missing() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "bad.jsonl");
    fs::write(&p, "{not json\n").unwrap();
    assert_eq!(msts(&["verify", &p]).status.code(), Some(2));
    assert_eq!(msts(&["verify", &path(&dir, "absent")]).status.code(), Some(2));
    // Value outside its coordinate.
    fs::write(
        &p,
        "{\"format\":\"msts-design\",\"version\":1,\"alphabet\":[2,2,2],\"meta\":{}}\n{\"cw\":[[0,1],[1,1],[2,5]]}\n",
    )
    .unwrap();
    assert_eq!(msts(&["verify", &p]).status.code(), Some(2));
}

#[test]
fn check_residues() {
    let o = msts(&["check", "--k", "3", "--l", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("residues={1,3}"));
    assert!(stdout(&o).contains("minimum n=9"));

    let o = msts(&["check", "--k", "7", "--l", "3"]);
    assert!(stdout(&o).contains("residues={3,5}"));
    assert!(stdout(&o).contains("minimum n=21"));

    let o = msts(&["check", "--k", "5", "--l", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residues={}"));
}

#[test]
fn check_with_n_prints_five_verdicts() {
    let o = msts(&["check", "--k", "3", "--l", "3", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with(": pass")).count(), 6);

    let o = msts(&["check", "--k", "3", "--l", "3", "--n", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(4) n >= k * l: fail"));
}

#[test]
fn partition_code_33() {
    let o = msts(&["partition-code", "--kprime", "2", "--lprime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alphabet=[2x9,4x2]"));
    assert!(stdout(&o).contains("codewords=33"));
}

#[test]
fn ptd_and_extend() {
    let dir = TempDir::new().unwrap();
    let ptd = path(&dir, "ptd16.json");
    let o = msts(&["ptd", "--m", "16", "--r", "15", "-o", &ptd]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("factors=15 triples=0"));

    let base = construct(&dir, "d33.jsonl", "3", "3");
    let out = path(&dir, "ext.jsonl");
    let o = msts(&["extend", "--base", &base, "--ptd", &ptd, "-o", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("codewords=153"));
    assert!(msts(&["verify", &out]).status.success());

    // r must equal n + k + l.
    let small = path(&dir, "ptd6.json");
    assert!(msts(&["ptd", "--m", "6", "--r", "5", "-o", &small]).status.success());
    let o = msts(&["extend", "--base", &base, "--ptd", &small]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("mismatch"), "{}", stderr(&o));
}

#[test]
fn ptd_routes_and_rejection() {
    let o = msts(&["ptd", "--m", "12", "--r", "1"]);
    assert!(stdout(&o).contains("route=steiner-triple-system"));
    let o = msts(&["ptd", "--m", "6", "--r", "3"]);
    assert!(stdout(&o).contains("route=search"));
    assert!(stdout(&o).contains("triples=2"));
    assert_eq!(msts(&["ptd", "--m", "16", "--r", "11"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = TempDir::new().unwrap();
    let p = Path::new(&path(&dir, "missing")).join("d.jsonl");
    let o = msts(&["construct", "--k", "1", "--l", "1", "-o", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_ptd_file_is_format_error() {
    let dir = TempDir::new().unwrap();
    let base = construct(&dir, "d.jsonl", "1", "1");
    let ptd = path(&dir, "p.json");
    fs::write(&ptd, "{\"m\":4}").unwrap();
    let o = msts(&["extend", "--base", &base, "--ptd", &ptd]);
    assert_eq!(o.status.code(), Some(2));
}
