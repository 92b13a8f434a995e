use std::path::PathBuf;
use std::process::{Command, Output};

use mackey::burnside::Burnside;
use mackey::grp::catalog;
use mackey::mackey::{free_mackey, mackey_iso_test, parse_mackey_file, MackeyMorphism};
use mackey::zmod::AbHom;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adams-mackey")).args(args).current_dir(root()).output().unwrap()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn rep_counterexample_demo() {
    let o = run(&["demo", "rep-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("induced map on fixed points: 0"), "{s}");
    assert!(s.contains("Z[C2] -> Z, induced map on fixed points: 2 (injective: true, surjective: false)"), "{s}");
    assert!(s.contains("trivial module F2, induced map surjective: true"), "{s}");
    let j = json(&run(&["demo", "rep-counterexample", "--json"]));
    assert_eq!(j["result"]["mackey_status"], "PASS");
}

#[test]
fn adams_generators() {
    assert_eq!(run(&["adams", "-G", "C2", "-N", "G"]).status.code(), Some(0));
    assert_eq!(run(&["adams", "-G", "C2", "-N", "e"]).status.code(), Some(0));
    let j = json(&run(&["adams", "-G", "S3", "-N", "(0 1 2)", "--json"]));
    assert_eq!(j["ok"], true);
    assert!(j["result"]["items"].as_array().unwrap().iter().all(|i| i["status"] == "PASS"));
}

#[test]
fn non_free_object_is_not_applicable() {
    let args = ["adams", "-G", "C2", "-N", "G", "-X", "data/burnside_c2.mackey"];
    let o = run(&[&args[..], &["--expect", "not-applicable"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fixed points ranks [2] vs orbits of torsion part [1]"));
    assert_eq!(run(&args).status.code(), Some(1));
}

#[test]
fn random_torsion_object() {
    let o = run(&["adams", "-G", "C4", "-N", "(0 2)(1 3)", "--random-torsion", "5", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn shipped_file_matches_builtin() {
    let o = run(&["mackey-check", "data/free_c2_e.mackey"]);
    assert_eq!(o.status.code(), Some(0));
    let m = parse_mackey_file(root().join("data/free_c2_e.mackey")).unwrap();
    let f = free_mackey(&Burnside::of(&catalog("C2").unwrap()), 0);
    let comps = (0..2).map(|h| AbHom::identity(f.level(h))).collect();
    assert_eq!(mackey_iso_test(&MackeyMorphism::new(&f, &m, comps).unwrap()), Ok(true));
}

#[test]
fn bad_files() {
    let o = run(&["mackey-check", "data/bad_transfer_c2.mackey"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("axiom violation"));
    let empty = std::env::temp_dir().join("adams_mackey_empty.mackey");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(run(&["mackey-check", empty.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["adams", "-G", "C7", "-N", "e"]).status.code(), Some(2));
    assert_eq!(run(&["adams", "-G", "S3", "-N", "(0 1"]).status.code(), Some(2));
    assert_eq!(run(&["campaign", "--pair", "C2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn group_and_tables() {
    let j = json(&run(&["check-group", "S3", "--json"]));
    assert_eq!(j["result"]["subgroups"], 6);
    assert_eq!(j["result"]["classes"].as_array().unwrap().len(), 4);
    let j = json(&run(&["check-group", "V", "--gens", "(0 1);(2 3)", "--json"]));
    assert_eq!(j["result"]["order"], 4);
    let j = json(&run(&["burnside-table", "C2", "--json"]));
    assert_eq!(j["result"]["hom_basis"], serde_json::json!([[2, 1], [1, 2]]));
    let j = json(&run(&["family", "-G", "C2xC2", "-N", "(0 1)", "--json"]));
    assert_eq!(j["result"]["members"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["wirthmuller", "-G", "S3"]).status.code(), Some(0));
}

#[test]
fn campaign_is_deterministic() {
    let args = ["campaign", "--pair", "C2:G", "--pair", "C4:(0 2)(1 3)", "--random", "2", "--naturality", "1", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let j = json(&a);
    assert_eq!(j["result"]["pairs"][0]["negative"]["status"], "NOT_APPLICABLE");
}
