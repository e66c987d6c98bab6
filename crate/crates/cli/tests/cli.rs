use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sal_cli::{analyze, CheckStatus, CHECKS};
use sal_core::algebra::{build_t_beta, is_simple};
use sal_core::designs::construct_ag;
use sal_core::exact::q;
use serde_json::Value;
use tempfile::TempDir;

fn sal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sal")).args(args).env_remove("SAL_CLOSURE_CAP").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_system(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{name}.sts"));
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    assert_eq!(code(&sal(&full)), 0);
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn verdict<'a>(doc: &'a Value, report: usize, check: &str) -> &'a Value {
    &doc["reports"][report]["verdicts"][check]
}

#[test]
fn construct_writes_canonical_files() {
    let dir = TempDir::new().unwrap();
    let ag = std::fs::read_to_string(write_system(&dir, "ag2", &["ag", "2"])).unwrap();
    let lines: Vec<&str> = ag.lines().collect();
    assert_eq!(lines[0], "9");
    assert_eq!(lines.len(), 13);
    let fano = sal(&["construct", "fano"]);
    assert_eq!(String::from_utf8(fano.stdout).unwrap().lines().count(), 8);
    let bose = write_system(&dir, "bose9", &["bose", "9"]);
    let v = sal(&["validate", p(&bose), "--json", "-"]);
    assert_eq!(code(&v), 0);
    let doc = json_of(&v);
    assert_eq!((doc["n"].as_u64(), doc["b"].as_u64(), doc["r"].as_u64()), (Some(9), Some(12), Some(4)));
    assert_eq!(doc["schema"], "1");
    assert_eq!(code(&sal(&["construct", "bose", "7"])), 2);
    assert_eq!(code(&sal(&["construct", "ag"])), 2);
}

#[test]
fn validate_reports_broken_systems() {
    let dir = TempDir::new().unwrap();
    let partial = dir.path().join("partial.sts");
    std::fs::write(&partial, "7\n1 2 3\n1 4 5\n").unwrap();
    let out = sal(&["validate", p(&partial), "--json", "-"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    assert_eq!(doc["sts"], false);
    assert_eq!(doc["partial"], true);
    assert_eq!(code(&sal(&["validate", p(&dir.path().join("missing.sts"))])), 2);
    let garbage = dir.path().join("garbage.sts");
    std::fs::write(&garbage, "seven\n").unwrap();
    assert_eq!(code(&sal(&["validate", p(&garbage)])), 2);
}

#[test]
fn plane_at_one_splits_into_four() {
    let dir = TempDir::new().unwrap();
    let ag = write_system(&dir, "ag2", &["ag", "2"]);
    let out = sal(&["analyze", p(&ag), "--beta", "1", "--beta", "-4/3", "--json", "-"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json_of(&out);
    let simple = verdict(&doc, 0, "simplicity");
    assert_eq!(simple["details"]["verdict"], "not_simple");
    assert_eq!(simple["details"]["ideal_dim"], 2);
    assert_eq!(simple["details"]["decomposition"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(verdict(&doc, 1, "simplicity")["details"]["verdict"], "simple");
    assert_eq!(verdict(&doc, 1, "graded_ideals")["status"], "pass");
    assert_eq!(verdict(&doc, 0, "fusion")["status"], "excluded");
}

#[test]
fn fano_at_zero() {
    let dir = TempDir::new().unwrap();
    let fano = write_system(&dir, "fano", &["fano"]);
    let out = sal(&["analyze", p(&fano), "--beta", "0", "--json", "-"]);
    let doc = json_of(&out);
    assert_eq!(verdict(&doc, 0, "exactness")["status"], "pass");
    assert_eq!(verdict(&doc, 0, "simplicity")["details"]["verdict"], "simple");
    // ω = 1 and n − 2 = 5.
    let gram = verdict(&doc, 0, "killing_gram");
    assert_eq!(gram["status"], "pass");
    assert_eq!(gram["details"]["factor"], "1/5");
    assert_eq!(doc["reports"][0]["params"]["omega"], "1/1");
    assert_eq!(verdict(&doc, 0, "miyamoto_group")["status"], "excluded");
}

#[test]
fn every_check_appears_once() {
    let dir = TempDir::new().unwrap();
    let fano = write_system(&dir, "fano", &["fano"]);
    let out = sal(&["analyze", p(&fano), "--beta", "2", "--checks", "exactness", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let verdicts = doc["reports"][0]["verdicts"].as_object().unwrap();
    assert_eq!(verdicts.len(), CHECKS.len());
    for (name, _) in CHECKS {
        assert!(verdicts.contains_key(name), "{name}");
    }
    assert_eq!(verdicts["invariance"]["details"]["reason"], "not requested");
    let listed = sal(&["checks"]);
    assert_eq!(String::from_utf8(listed.stdout).unwrap().lines().count(), CHECKS.len());
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let fano = write_system(&dir, "fano", &["fano"]);
    assert_eq!(code(&sal(&["analyze", p(&fano), "--beta", "0.5"])), 2);
    assert_eq!(code(&sal(&["analyze", p(&fano), "--beta", "1e2"])), 2);
    assert_eq!(code(&sal(&["analyze", p(&fano)])), 2);
    assert_eq!(code(&sal(&["analyze", p(&fano), "--beta", "1", "--checks", "bogus"])), 2);
    assert_eq!(code(&sal(&["catalog", p(&fano), "--beta", "1", "--block", "1,2"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let ag = write_system(&dir, "ag2", &["ag", "2"]);
    let args = ["analyze", p(&ag), "--beta", "2/7", "--beta", "-1/2", "--json", "-"];
    let first = sal(&args);
    let second = sal(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!String::from_utf8(first.stdout).unwrap().contains("timings"));
}

#[test]
fn fusion_failure_on_non_hall_exits_1() {
    let dir = TempDir::new().unwrap();
    let s13 = write_system(&dir, "s13", &["skolem", "13"]);
    let out = sal(&["analyze", p(&s13), "--beta", "2", "--checks", "fusion", "--json", "-"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    let fusion = verdict(&doc, 0, "fusion");
    assert_eq!(fusion["status"], "fail");
    assert_eq!(fusion["details"]["first_failure"]["ok"], false);
    assert!(fusion["details"]["first_failure"]["witness"]["product_coords"].is_array());
}

#[test]
fn sweep_marks_transitions() {
    let dir = TempDir::new().unwrap();
    let fano = write_system(&dir, "fano", &["fano"]);
    let out = sal(&["sweep", p(&fano), "--beta", "2", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let row = |beta: &str| rows.iter().find(|r| r["beta"] == beta).unwrap_or_else(|| panic!("{beta}"));
    assert_eq!(row("-3/2")["flags"], serde_json::json!(["β₋ = 1"]));
    assert_eq!(row("1/1")["flags"], serde_json::json!(["β₊ = 1"]));
    assert_eq!(row("7/12")["beta_plus"], "1/2");
    assert_eq!(row("2/1")["simplicity"], "simple");
}

#[test]
fn group_of_the_plane() {
    let dir = TempDir::new().unwrap();
    let ag = write_system(&dir, "ag2", &["ag", "2"]);
    let out = sal(&["group", p(&ag), "--json", "-"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    // x ↦ ±x + t on F₃².
    assert_eq!(doc["group"]["order"], 18);
    assert_eq!(doc["group"]["commutator_order"], 9);
    assert_eq!(doc["three_transposition"]["commutator_is_3_group"], true);
    let capped = Command::new(env!("CARGO_BIN_EXE_sal"))
        .args(["group", p(&ag), "--json", "-"])
        .env("SAL_CLOSURE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(code(&capped), 1);
    assert_eq!(json_of(&capped)["status"], "undecided");
    assert_eq!(code(&sal(&["group", p(&ag), "--closure-cap", "18"])), 0);
}

#[test]
fn catalog_json_shape() {
    let dir = TempDir::new().unwrap();
    let fano = write_system(&dir, "fano", &["fano"]);
    let out = sal(&["catalog", p(&fano), "--beta", "-1/14", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let cats = doc["catalogs"].as_array().unwrap();
    assert_eq!(cats.len(), 7);
    assert_eq!(cats[0]["beta"], "-1/14");
    assert_eq!(cats[0]["entries"][0]["label"], "z_B");
    assert_eq!(cats[0]["entries"][0]["kind"], "square_zero");
    let one = sal(&["catalog", p(&fano), "--beta", "1", "--block", "1,2,4", "--json", "-"]);
    let doc = json_of(&one);
    assert_eq!(doc["catalogs"][0]["entries"][0]["coords"][0], "1/3");
}

#[test]
fn verdicts_match_library_calls() {
    let s = construct_ag(2).unwrap();
    for beta in [q(1, 1), q(-4, 3), q(3, 7)] {
        let report = analyze(&s, &beta, &["simplicity".to_string()], 1000, false).unwrap();
        let direct = is_simple(&build_t_beta(&s, beta.clone()).unwrap()).unwrap();
        assert_eq!(report.verdicts["simplicity"].details["verdict"], direct.label());
        assert_eq!(report.verdicts["simplicity"].status, CheckStatus::Pass);
    }
}
