use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shapeorbit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn metric_segment_ball() {
    let dir = TempDir::new().unwrap();
    let seg = gen(dir.path(), "seg.json", &["segment"]);
    let ball = gen(dir.path(), "ball.json", &["ball-polygon", "--m", "256"]);
    let out = run(&["metric", seg.to_str().unwrap(), ball.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-3);
    assert!(v["lower"].as_f64().unwrap() <= 1.0 && 1.0 <= v["upper"].as_f64().unwrap());
}

#[test]
fn bounds_report_formats() {
    let dir = TempDir::new().unwrap();
    let t = gen(dir.path(), "t.json", &["simplex"]);
    let rt = gen(dir.path(), "rt.json", &["reuleaux", "--m", "128"]);
    let out = run(&["bounds", t.to_str().unwrap(), rt.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "bound_name,applicable,bound,metric_lower,metric_upper,slack,pass");
    assert_eq!(lines.count(), 7);
    assert!(text.contains("jung_extremal,true,0.232050807569"));

    let out = run(&["bounds", t.to_str().unwrap(), rt.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 7);
}

#[test]
fn sim_square_and_rotated_square() {
    let dir = TempDir::new().unwrap();
    let sq = dir.path().join("sq.json");
    let dia = dir.path().join("dia.json");
    fs::write(&sq, r#"{"dim": 2, "kind": "polytope", "vertices": [[1,1],[-1,1],[-1,-1],[1,-1]]}"#).unwrap();
    fs::write(&dia, r#"{"dim": 2, "kind": "polytope", "vertices": [[1,0],[0,1],[-1,0],[0,-1]]}"#).unwrap();
    let out = run(&["sim", sq.to_str().unwrap(), dia.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["d_dil"]["value"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert!((v["d_sim"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v["d_sim"]["mode"]["kind"], "heuristic");
}

#[test]
fn functionals_of_triangle() {
    let dir = TempDir::new().unwrap();
    let t = gen(dir.path(), "t.json", &["simplex"]);
    let v = json(&run(&["functionals", t.to_str().unwrap()]));
    assert_eq!(v["diameter"].as_f64().unwrap(), 1.73205080757);
    assert_eq!(v["inradius"]["radius"].as_f64().unwrap(), 0.5);
    assert_eq!(v["jung_holds"], true);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = run(&["verify", "--trials", "0", "--body", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    let out = run(&["functionals", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "cap"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["diagram", "--samples", "1"]).env("SHAPEORBIT_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_runs() {
    let out = run(&["verify", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks_run"], 0);
    let out = run(&["verify", "--trials", "3", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(json(&out)["checks_run"].as_u64().unwrap() > 0);
}

#[test]
fn diagram_rows_stay_in_range() {
    let out = run(&["diagram", "--samples", "500", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let r: f64 = rec[3].parse().unwrap();
        let d: f64 = rec[4].parse().unwrap();
        assert!((0.0..=1.0).contains(&r) && (1.0..=2.0 + 1e-9).contains(&d), "{rec:?}");
        assert_eq!(&rec[11], "true");
        rows += 1;
    }
    assert_eq!(rows, 500);
}
