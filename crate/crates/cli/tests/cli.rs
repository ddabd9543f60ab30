use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;

use encat::corr::{graph_correspondence, CorrespondenceJson};
use encat::fincat::json::FinCatJson;
use encat::fincat::{FinCat, FinFunctor};
use encat::quiv::random::{inflate, random_quiver, rng};
use encat::quiv::{Ambient, QuiverJson};
use encat::shapes::{check_cap_cup, check_inner_faces, parse_simplex, shape};

fn encat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_encat")).args(args).env_remove("ENCAT_CAP").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

/// A fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("encat-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &PathBuf, file: &str, v: &impl serde::Serialize) -> String {
    let p = dir.join(file);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn shape_json_of_the_active_arrow() {
    let o = encat(&["shape", "w=0000;phi=[0,3]", "--json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn shape_dot_has_one_rank_per_floor() {
    let o = encat(&["shape", "w=00000;phi=[1,2,3]", "--dot"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("rank=same").count(), 2);
    assert_eq!(encat(&["shape", "w=00000;phi=[1,2,3]", "--format", "dot"]).stdout, text.into_bytes());
}

#[test]
fn malformed_simplex_is_a_usage_error() {
    let o = encat(&["shape", "w=0000; phi=[0,x]"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("\"x\""), "{err}");
}

#[test]
fn unknown_suite_and_dot_reports_are_usage_errors() {
    assert_eq!(code(&encat(&["laws", "nope"])), 2);
    assert_eq!(code(&encat(&["laws", "fold", "--format", "dot"])), 2);
    assert_eq!(code(&encat(&["laws", "fold", "--group", "nope"])), 2);
}

#[test]
fn fold_suite_passes_deterministically() {
    let a = encat(&["laws", "fold", "--seed", "7"]);
    let b = encat(&["laws", "fold", "--seed", "7", "--exec", "seq"]);
    assert_eq!((code(&a), code(&b)), (0, 0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["laws"][0]["passed"], 18);
    assert!(String::from_utf8(a.stderr).unwrap().contains("wall time"));
}

#[test]
fn yoneda_suite_with_flags() {
    let o = encat(&["laws", "yoneda", "--size", "2", "--cases", "12", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["config"]["max_size"], 2);
    assert!(v["laws"].as_array().unwrap().iter().all(|l| l["failed"] == 0));
}

#[test]
fn structure_failures_replay() {
    let o = encat(&["laws", "shapes", "--group", "structure", "--max-word", "3", "--max-dim", "2"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    let law = |name: &str| v["laws"].as_array().unwrap().iter().find(|l| l["law"] == name).unwrap().clone();
    let emb = law("shapes.structure.inner_face_embedding");
    assert!(emb["failed"].as_u64().unwrap() > 0);
    for c in emb["counterexamples"].as_array().unwrap() {
        let s = parse_simplex(c["payload"]["simplex"].as_str().unwrap()).unwrap();
        assert!(check_inner_faces(&s).unwrap() > 0);
    }
    for c in law("shapes.structure.cap_cup")["counterexamples"].as_array().unwrap() {
        let s = parse_simplex(c["payload"]["simplex"].as_str().unwrap()).unwrap();
        assert!(check_cap_cup(&shape(&s).unwrap()).unwrap() > 0);
    }
    assert_eq!(law("shapes.structure.dual_segal")["failed"], 0);
}

#[test]
fn cap_override_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_encat")).args(["laws", "fold"]).env("ENCAT_CAP", "1").output().unwrap();
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["config"]["cap"], 1);
    let err = v["laws"][0]["counterexamples"][0]["payload"]["error"].as_str().unwrap();
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn segal_round_trip_through_files() {
    let dir = scratch("segal");
    let cat = write(&dir, "chain.json", &FinCatJson::from_cat(&FinCat::chain(2)));
    let seg = dir.join("seg.json");
    let o = encat(&["segal", "to", &cat, "--roundtrip", "--out", seg.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let back = encat(&["segal", "from", seg.to_str().unwrap(), "--roundtrip"]);
    assert_eq!(code(&back), 0);
    let c: FinCatJson = serde_json::from_slice(&back.stdout).unwrap();
    assert_eq!(c.to_cat().unwrap().num_arrows(), 6);
}

#[test]
fn schema_violation_names_a_pointer() {
    let dir = scratch("schema");
    let mut j = FinCatJson::from_cat(&FinCat::chain(1));
    j.arrows[0].src = "nowhere".into();
    let p = write(&dir, "bad.json", &j);
    let o = encat(&["segal", "to", &p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("/arrows/0/src"));
}

#[test]
fn correspondence_conversions_and_representation() {
    let dir = scratch("corr");
    let c = Arc::new(FinCat::chain(2));
    let f = FinFunctor::identity(c);
    let k = CorrespondenceJson::from_correspondence(&graph_correspondence(&f).unwrap()).unwrap();
    let kp = write(&dir, "k.json", &k);
    let seg = dir.join("seg.json");
    assert_eq!(code(&encat(&["corr", "to-seg", &kp, "--roundtrip", "--out", seg.to_str().unwrap()])), 0);
    let back = encat(&["corr", "from-seg", seg.to_str().unwrap(), "--roundtrip"]);
    assert_eq!(code(&back), 0);
    let rep = encat(&["corr", "represent", &kp]);
    assert_eq!(code(&rep), 0);
    let v = stdout_json(&rep);
    assert_eq!(v["representable"], true);
    assert_eq!(v["functor"]["omap"]["0"], "0");
}

#[test]
fn completion_collapses_a_planted_isomorphism() {
    let dir = scratch("complete");
    let (j, _) = inflate(&FinCat::chain(1), &[1, 0]);
    let p = write(&dir, "j.json", &FinCatJson::from_cat(&j));
    let o = encat(&["complete", &p]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["objects"], 2);
    assert_eq!(v["complete"], true);
}

#[test]
fn yoneda_check_on_a_file() {
    let dir = scratch("yoneda");
    let p = write(&dir, "c.json", &FinCatJson::from_cat(&FinCat::chain(2)));
    let o = encat(&["yoneda", "check", &p, "--cases", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn fold_alg_on_given_tables() {
    let o = encat(&["fold-alg", "--left", "[[0,1],[1,0]]", "--right", "[[0,1],[1,1]]", "--carrier", "2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["bijective"], true);
    assert_eq!(code(&encat(&["fold-alg", "--left", "[[0,1]", "--right", "[[0]]"])), 2);
}

#[test]
fn tensor_of_two_quivers() {
    let dir = scratch("tensor");
    let amb = Ambient::new(Arc::new(FinCat::chain(1)));
    let mut r = rng(4);
    let a = write(&dir, "a.json", &QuiverJson::from_quiver(&random_quiver(&amb, &mut r, 2)));
    let b = write(&dir, "b.json", &QuiverJson::from_quiver(&random_quiver(&amb, &mut r, 2)));
    let o = encat(&["tensor", &a, &b]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let q: QuiverJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!(q.to_quiver().is_ok());
}
