use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ccdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccdp")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &Value, want: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() < 5e-5
}

#[test]
fn independent_state_example() {
    let out = ccdp(&["bounds", "--model", "wrdp", "--P", "7", "--c2", "4", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(close(&v["inner"]["value"], 0.7925));
    assert!(close(&v["outer"]["value"], 1.7120));
    assert!(close(&v["gap"], 0.9195));
}

#[test]
fn unit_fading_is_tight() {
    let v = json(&ccdp(&["bounds", "--model", "wsfd", "--P", "3", "--c2", "1", "--a", "1"]));
    assert_eq!(v["inner"]["value"].as_f64(), Some(1.0));
    assert_eq!(v["outer"]["value"].as_f64(), Some(1.0));
}

#[test]
fn equicorrelated_reports_printed_outer_separately() {
    let v = json(&ccdp(&["bounds", "--model", "ccdp-es", "--P", "11", "--c2", "4", "--rho", "0.5"]));
    assert!(close(&v["gap"], 0.85376));
    assert_eq!(v["printed_outer"]["value"].as_f64(), Some(2.0));
}

#[test]
fn output_is_rounded_to_ten_digits() {
    let out = ccdp(&["bounds", "--model", "wrdp", "--P", "7", "--c2", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.7924812504"), "{text}");
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(ccdp(&["bounds", "--model", "wrdp", "--P", "-1", "--c2", "4"]).status.code(), Some(2));
    assert_eq!(ccdp(&["bounds", "--model", "nope"]).status.code(), Some(2));
    assert_eq!(ccdp(&["simulate", "--n", "10"]).status.code(), Some(2));
}

#[test]
fn grid_syntax_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.grid");
    fs::write(&g, "# header\nP = 1, 2\nc2 = 1, x\n").unwrap();
    let out = ccdp(&["gap", "--grid", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":3:"), "{err}");
}

#[test]
fn failing_strong_spec_is_rejected_by_condition() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("s.grid");
    fs::write(&g, "spec = 10 100 0,1,2\n").unwrap();
    let out = ccdp(&["gap", "--model", "wsfd", "--grid", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("spec 1") && err.contains("P+1"), "{err}");
}

#[test]
fn strong_spec_gap_passes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("s.grid");
    fs::write(&g, "P = 1\nc2 = 1\na = 1\nspec = 10 1e8 0,1,4,40\n").unwrap();
    let out = ccdp(&["gap", "--model", "wsfd", "--grid", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["reports"][1]["theorem"], "wsfd_strong");
    assert_eq!(v["reports"][1]["pass"], true);
}

#[test]
fn sweep_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.grid");
    fs::write(&g, "P = log 0.5 1000 9\nc2 = log 0.1 1e5 11\nM = 2, 4\n").unwrap();
    let mut bytes = Vec::new();
    for (i, threads) in ["1", "4"].into_iter().enumerate() {
        let out = dir.path().join(format!("r{i}.csv"));
        let run = Command::new(env!("CARGO_BIN_EXE_ccdp"))
            .env("CCDP_THREADS", threads)
            .args(["sweep", "--model", "ccdp-es", "--grid", g.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(run.status.success());
        bytes.push(fs::read(out).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let text = String::from_utf8(bytes.remove(0)).unwrap();
    assert!(text.starts_with("theorem,P,c2,a,rho,Q,M,inner,outer,gap,branch_in,branch_out,scheme\n"));
}

#[test]
fn format_follows_extension_unless_given() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.grid");
    fs::write(&g, "P = 1, 10\nc2 = 1, 100\nM = 2\n").unwrap();
    let j = dir.path().join("r.json");
    assert!(ccdp(&["sweep", "--grid", g.to_str().unwrap(), "--out", j.to_str().unwrap()]).status.success());
    let v: Value = serde_json::from_slice(&fs::read(&j).unwrap()).unwrap();
    assert_eq!(v[0]["theorem"], "wrdp_2");
    let c = dir.path().join("r.out");
    let args = ["sweep", "--grid", g.to_str().unwrap(), "--out", c.to_str().unwrap(), "--format", "csv"];
    assert!(ccdp(&args).status.success());
    assert!(fs::read_to_string(&c).unwrap().starts_with("theorem,"));
}

#[test]
fn lindet_reports_overlap() {
    let out = ccdp(&["lindet", "--P", "3", "--c", "4", "--a", "0,1,2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("collision windows overlap"), "{text}");
    assert!(text.contains("strong fading: PASS"));
    let out = ccdp(&["lindet", "--P", "3", "--c", "4", "--a", "0,1,2", "--units", "amplitude"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("collision windows disjoint"));
}

#[test]
fn oracle_matches_closed_form_at_unit_fading() {
    let v = json(&ccdp(&["oracle", "--model", "wsfd", "--P", "3", "--c2", "1", "--a", "1"]));
    assert!(close(&v["rate"], 1.0));
    assert!(close(&v["closed_form_inner"], 1.0));
}

#[test]
fn simulate_passes() {
    let out = ccdp(&["simulate", "--model", "ccdp-es", "--P", "4", "--c2", "9", "--M", "3", "--rho", "0.3", "--n", "20000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}
