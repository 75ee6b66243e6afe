use std::fs;
use std::process::{Command, Output};

fn bicayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicayley")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(bicayley(&["verify", "group", "--group", "cyclic:6", "--property", "bci"]).status.code(), Some(0));
    assert_eq!(bicayley(&["verify", "group", "--group", "dihedral:4", "--property", "bci"]).status.code(), Some(1));
    assert_eq!(bicayley(&["group", "--group", "dihedral:1"]).status.code(), Some(3));
    assert_eq!(bicayley(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(bicayley(&["repro", "no-such-case"]).status.code(), Some(3));
    let capped = bicayley(&["verify", "group", "--group", "cyclic:128", "--property", "bci"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    assert_eq!(bicayley(&["--help"]).status.code(), Some(0));
}

#[test]
fn edge_list_export() {
    let o = bicayley(&["graph", "build", "--group", "cyclic:5", "--set", "1,4", "--cay", "--format", "edge-list"]);
    assert_eq!(stdout(&o), "0 1\n1 2\n2 3\n3 4\n0 4\n");
}

#[test]
fn graph6_file_round_trips_through_iso() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.g6");
    let p = path.to_str().unwrap();
    let o = bicayley(&["graph", "build", "--group", "dihedral:4", "--set", "1,a2", "--bi", "--format", "graph6", "--out", p]);
    assert!(o.status.success());
    let o = bicayley(&["iso", "--left", p, "--right", "bi:dihedral:4@1,b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = bicayley(&["iso", "--left", p, "--right", "bi:dihedral:4@1,a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn equivalence_and_orbits() {
    let o = bicayley(&["equiv", "--group", "dihedral:5", "--left", "1,a", "--right", "a,a2", "--action", "bci"]);
    assert!(stdout(&o).starts_with("equivalent"));
    let o = bicayley(&["orbits", "--group", "dihedral:5", "--k", "4", "--action", "bci"]);
    let out = stdout(&o);
    assert!(out.contains("4 orbits"));
    assert!(out.contains("{1,a,a2,b}\t100"));
}

#[test]
fn records_format_emits_json() {
    let o = bicayley(&["--format", "records", "verify", "group", "--group", "dihedral:4", "--property", "bci"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(record["holds"], false);
    assert_eq!(record["witness"]["s"], "1,a2");
    assert_eq!(record["witness"]["t"], "1,b");
}

#[test]
fn repro_cases_match() {
    for case in ["d8-witness", "d10-spectra", "z8-search"] {
        let o = bicayley(&["repro", case]);
        assert_eq!(o.status.code(), Some(0), "{case}: {}", stdout(&o));
        assert!(stdout(&o).contains("result: match"));
    }
    assert_eq!(bicayley(&["repro", "z2p", "--p", "5"]).status.code(), Some(0));
}

#[test]
fn atlas_reruns_are_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("atlas.jsonl");
    let p = path.to_str().unwrap();
    let args = ["atlas", "--max-order", "6", "--property", "bci", "--out", p];
    assert!(bicayley(&args).status.success());
    let first = fs::read_to_string(&path).unwrap();
    assert!(first.lines().count() >= 6);
    assert!(bicayley(&args).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), first);
}
