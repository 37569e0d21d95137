use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sbdw(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbdw"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SBDW_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_a3_reports_the_golden_cell_count() {
    let dir = tempfile::tempdir().unwrap();
    let o = sbdw(&["verify", "--group", "A3", "--c", "s1s2s3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&dir.path().join("A3_s1s2s3.verify.json"));
    assert_eq!(r["cell_count"], 36);
    assert_eq!(r["group"], "A3");
    assert_eq!(r["coxeter_element_word"], "s1s2s3");
    assert_eq!(r["base_point"], serde_json::json!(["1", "1", "1"]));
    for key in ["nondegenerate", "facet_matched", "volume_equal"] {
        assert_eq!(r["certificates"][key], true, "{key}");
    }
}

#[test]
fn jv_in_a2_is_two_plus_q() {
    let dir = tempfile::tempdir().unwrap();
    let o = sbdw(&["jv", "--group", "A2", "--c", "s1s2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let r = json(&dir.path().join("A2_s1s2.jv.json"));
    assert_eq!(r["jv"]["lhs_coeffs"], serde_json::json!([2, 1, 0]));
    assert_eq!(r["jv"]["rhs_coeffs"], serde_json::json!(["2", "1", "0"]));
    assert_eq!(r["jv"]["equal"], true);
}

#[test]
fn theorems_pass_for_every_coxeter_element_of_a3() {
    let dir = tempfile::tempdir().unwrap();
    let o = sbdw(&["theorems", "--group", "A3", "--c", "all"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.contains("PASS") && l.contains("theorems=6/6")).count(), 4);
    let r = json(&dir.path().join("A3_s1s2s3.theorems.json"));
    assert_eq!(r["theorems"]["checks"].as_array().unwrap().len(), 6);
    assert_eq!(r["theorems"]["cat_plus"], 5);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["verify", "--group", "Q7"],
        vec!["verify", "--group", "A3", "--c", "s1s1s2"],
        vec!["verify", "--group", "A3", "--c", "s1s2"],
        vec!["verify", "--group", "A3", "--c", "s1x"],
        vec!["export-svg", "--group", "A2"],
        vec!["theorems", "--group", "D4", "--c", "s1s2s3s4", "--suite-cap", "100"],
        vec!["verify"],
        vec!["frobnicate", "--group", "A2"],
    ] {
        let o = sbdw(&args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_cache_states() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    assert_eq!(sbdw(&["report", "--group", "A3", "--c", "s1s3s2"], &a).status.code(), Some(0));
    let miss = sbdw(&["report", "--group", "A3", "--c", "s1s3s2", "--cache-dir", cache], &b);
    assert!(String::from_utf8_lossy(&miss.stderr).contains("built and cached"));
    let hit = sbdw(&["report", "--group", "A3", "--c", "s1s3s2", "--cache-dir", cache], &c);
    assert!(String::from_utf8_lossy(&hit.stderr).contains("loaded from cache"));
    let name = "A3_s1s3s2.report.json";
    let first = fs::read(a.join(name)).unwrap();
    assert_eq!(first, fs::read(b.join(name)).unwrap());
    assert_eq!(first, fs::read(c.join(name)).unwrap());
    let r: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(r["certificates"]["regular"]["found_gamma"], true);
    assert!(r["certificates"]["regular"]["epsilon"].is_string());
    assert_eq!(r["conjectures"]["scans"].as_array().unwrap().len(), 5);
}

#[test]
fn exports_have_the_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sbdw(&["export-off", "--group", "A2", "--c", "s1s2"], dir.path()).status.code(), Some(0));
    let off = fs::read_to_string(dir.path().join("A2_s1s2.off")).unwrap();
    let lines: Vec<&str> = off.lines().collect();
    assert_eq!(&lines[..3], ["nOFF", "2", "6 4 0"]);

    assert_eq!(sbdw(&["export-svg", "--group", "A3", "--c", "s1s2s3"], dir.path()).status.code(), Some(0));
    let svg = fs::read_to_string(dir.path().join("A3_s1s2s3.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("class=\"delta\"").count(), 6);
    assert_eq!(svg.matches("class=\"chamber\"").count(), 6);
    assert_eq!(svg.matches("class=\"cluster\"").count(), 5);
}

#[test]
fn seeded_base_point_changes_coordinates_only() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(sbdw(&["build", "--group", "B3", "--c", "s2s1s3"], &a).status.code(), Some(0));
    assert_eq!(sbdw(&["build", "--group", "B3", "--c", "s2s1s3", "--seed", "5"], &b).status.code(), Some(0));
    let x = json(&a.join("B3_s2s1s3.cells.json"));
    let y = json(&b.join("B3_s2s1s3.cells.json"));
    assert_ne!(x["base_point"], y["base_point"]);
    assert_eq!(x["cells"], y["cells"]);
}

#[test]
fn config_file_supplies_defaults_and_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "group = \"B2\"\nc = \"all\"\ncommands = [\"verify\", \"jv\"]\n").unwrap();
    let o = sbdw(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4);
    assert!(dir.path().join("B2_s1s2.verify.json").exists());
    assert!(dir.path().join("B2_s2s1.jv.json").exists());

    let o = sbdw(&["verify", "--config", cfg.to_str().unwrap(), "--group", "G2", "--c", "s2s1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("G2_s2s1.verify.json").exists());
}
