use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .current_dir(dir)
        .env_remove("WORKBENCH_CAPS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn params_and_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["params", "--e", "2", "--p", "6"], dir.path());
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["pprime"].as_u64(), v["eta"].as_i64(), v["omega"].as_u64()), (Some(3), Some(1), Some(2)));

    let v = json(&workbench(&["fields", "--e", "3", "--p", "3"], dir.path()));
    assert_eq!(v["modulus"], 7);
    assert_eq!(v["q"], 2);
}

#[test]
fn gb_dump_and_pres_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(
        &["gb", "--preset", "ariki-koike", "--e", "2", "--p", "3", "--n", "2", "--dump", "rules.txt", "--emit-pres", "ak.pres"],
        dir.path(),
    );
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dimension"], 18);
    let rules = fs::read_to_string(dir.path().join("rules.txt")).unwrap();
    assert_eq!(rules.lines().count() as u64, v["rules"].as_u64().unwrap());

    let back = json(&workbench(&["gb", "--input", "ak.pres"], dir.path()));
    assert_eq!(back["dimension"], 18);
    assert_eq!(back["rules"], v["rules"]);
}

#[test]
fn fixed_quiver_hecke_pres_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&workbench(
        &["gb", "--preset", "quiver-hecke-fixed", "--e", "2", "--p", "3", "--emit-pres", "f.pres"],
        dir.path(),
    ));
    assert_eq!(v["dimension"], 6);
    let back = json(&workbench(&["gb", "--input", "f.pres"], dir.path()));
    assert_eq!(back["dimension"], 6);
    assert_eq!(back["graded"], v["graded"]);
}

#[test]
fn run_small_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["run", "--e", "2", "--p", "2", "--d", "1", "--n", "2", "--checks", "all"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dims"]["H"], 8);
    assert_eq!(v["dims"]["fixed"], 4);
    assert_eq!(v["summary"]["unexpected"], 0);
    assert!(v["timings"].is_object());
}

#[test]
fn bk_shift_failure_is_expected_and_listed() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["verify", "shift", "--family", "bk", "--e", "3", "--p", "3", "--n", "2", "--text"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL (expected)      shift/bk/shift on psi"), "{text}");
    assert!(text.contains("k=(0_1,1_1)"), "{text}");

    // Declaring the check as passing turns the same result into a failure.
    fs::write(dir.path().join("c.toml"), "[expect]\n\"shift/bk/shift on psi\" = \"pass\"\n").unwrap();
    let out = workbench(
        &["run", "--config", "c.toml", "--checks", "shift", "--family", "bk", "--e", "3", "--p", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unmet_expected_failure_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(
        &["verify", "dims", "--e", "2", "--p", "2", "--expect-fail", "dims/Ariki-Koike dimension"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(check(&json(&out), "dims/Ariki-Koike dimension")["outcome"], "unexpected");
}

#[test]
fn appendix_for_p_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["verify", "appendix", "--p", "1", "--e", "2", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&json(&out), "appendix/mutual inverses")["status"], "pass");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.toml"), "e = 2\np = 3\nn = 3\nchecks = [\"dims\"]\n").unwrap();
    let v = json(&workbench(&["run", "--config", "s.toml", "--n", "2", "--no-timings"], dir.path()));
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(v["dims"]["H"], 18);
    assert!(v.get("timings").is_none());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.toml"), "e = 2\np = 3\nbogus = 1\n").unwrap();
    for args in [
        &["run", "--config", "bad.toml"][..],
        &["run", "--e", "1", "--p", "2"],
        &["run", "--e", "inf", "--p", "3"],
        &["run", "--e", "2", "--p", "2", "--lambda", "0,1,5"],
        &["run", "--e", "2", "--p", "2", "--checks", "nonsense"],
        &["run", "--e", "2", "--p", "2", "--modulus", "7"],
        &["frobnicate"],
    ] {
        let out = workbench(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn env_caps_skip_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["run", "--e", "2", "--p", "2", "--checks", "dims,bk", "--caps", "max_rules=5000"])
        .env("WORKBENCH_CAPS", "max_rules=2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["passed"], 0);
    assert!(v["summary"]["skipped"].as_u64().unwrap() > 0);
    assert_eq!(v["config"]["caps"]["max_rules"], 2);
}

#[test]
fn dump_matrices_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["dump-matrices", "--e", "2", "--p", "2", "--out", "m"], dir.path());
    assert!(out.status.success());
    let m = dir.path().join("m");
    let index: Value = serde_json::from_str(&fs::read_to_string(m.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["dimension"], 8);
    let s = fs::read_to_string(m.join(index["generators"]["S"].as_str().unwrap())).unwrap();
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
    assert_eq!(index["idempotents"].as_object().unwrap().len(), 2);
}

#[test]
fn report_file_and_text_mode() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["verify", "morita", "--e", "2", "--p", "3", "--out", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(check(&v, "morita/Morita identity")["data"]["lhs"], "18");
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
}
