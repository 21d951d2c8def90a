use std::io::Write;
use std::process::{Command, Output, Stdio};

use hessian_core::game::{GameState, MoveTable};
use serde_json::Value;

fn hessian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hessian")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_lattice_passes() {
    let o = hessian(&["verify", "lattice"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS gram-table-400-entries"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_tree_reports_ball_of_161() {
    let o = hessian(&["verify", "tree", "--radius", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("161"));
}

#[test]
fn verify_group_json_report() {
    let o = hessian(&["--json", "--params", "1,1,1,1,1/16", "verify", "group"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["suite"], "group");
    let checks = report["checks"].as_array().unwrap();
    let inj = checks.iter().find(|c| c["name"] == "injectivity-length-6").unwrap();
    assert_eq!(inj["status"], "pass");
    assert!(inj["details"].as_str().unwrap().contains("34968"));
}

#[test]
fn verify_generic_params_skips_family_checks() {
    let o = hessian(&["--json", "--params", "1,2,3,4,5", "verify", "group"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "shimada-relations-generic" && c["status"] == "pass"));
    assert!(checks.iter().any(|c| c["status"] == "skip"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = hessian(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cusps_lists_four_orbits() {
    let o = hessian(&["--json", "cusps"]);
    assert!(o.status.success());
    let orbits: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(orbits.len(), 4);
    let total: usize = orbits.iter().map(|o| o["cusps"].as_array().unwrap().len()).sum();
    assert_eq!(total, 57);
}

#[test]
fn nef_of_delta_and_u01() {
    let delta = serde_json::to_string(&hessian_core::lattice::delta()).unwrap();
    let o = hessian(&["--json", "nef", &delta]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nef"], true);
    assert_eq!(v["norm"], "10/1");
    assert_eq!(v["word"]["free"], serde_json::json!([]));

    let o = hessian(&["nef", "[1,0,0,0,0,0,0,0,0,0]"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nef: false"));

    let o = hessian(&["nef", "[1,2]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tree_ball_counts() {
    let o = hessian(&["tree", "ball", "-r", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("depth 3: 36 vertices"));
    assert!(out.contains("total: 53"));
    let o = hessian(&["--json", "tree", "ball", "-r", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 17);
}

#[test]
fn word_commands() {
    let o = hessian(&["word", "mul", "x0 x1", "x1 x2"]);
    assert_eq!(stdout(&o).trim(), "x0 x2");
    let o = hessian(&["word", "mul", "s=(1023)", "x0"]);
    assert_eq!(stdout(&o).trim(), "x1 s=(1023)");
    let o = hessian(&["word", "reduce", "x3 x2 x2 x3 x1"]);
    assert_eq!(stdout(&o).trim(), "x1");
    let o = hessian(&["--json", "word", "matrix", "x0 x1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrix"].as_array().unwrap().len(), 10);
    assert!(v["vertex"].is_object());
    let o = hessian(&["word", "reduce", "y9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn game_new_move_solve_chain() {
    let dir = tempfile::tempdir().unwrap();
    let table = MoveTable::new();
    let o = hessian(&["game", "new", "--scramble", "5", "--seed", "7"]);
    assert!(o.status.success());
    let s: GameState = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s.history.len(), 5);
    s.validate(&table).unwrap();
    let path = dir.path().join("state.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();

    let o = hessian(&["game", "move", "--state", p, "F0", "F1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let moved: GameState = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(moved.history.len(), 7);
    moved.validate(&table).unwrap();

    let o = hessian(&["game", "solve", "--state", p]);
    assert!(o.status.success());
    let solved: GameState = serde_json::from_slice(&o.stdout).unwrap();
    assert!(solved.is_solved());
    assert!(solved.pose.is_identity());
    assert_eq!(solved.history.len(), 5 + s.word.len());
}

#[test]
fn game_reads_state_from_stdin() {
    let state = serde_json::to_string(&hessian_core::game::scramble(4, 2, &MoveTable::new())).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_hessian"))
        .args(["game", "solve", "--state", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(state.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let solved: GameState = serde_json::from_slice(&o.stdout).unwrap();
    assert!(solved.is_solved());
}

#[test]
fn game_rejects_tampered_state() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::to_value(hessian_core::game::scramble(3, 1, &MoveTable::new())).unwrap();
    v["history"] = serde_json::json!(["F0"]);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = hessian(&["game", "solve", "--state", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
