#![allow(clippy::excessive_precision)]

use std::io::Write;
use std::process::{Command, Output};

use homfinsler::cli::run_with;

const BIN: &str = env!("CARGO_BIN_EXE_homfinsler");

fn spawn(args: &[&str], env_mode: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("FINSLER_MODE");
    if let Some(m) = env_mode {
        cmd.env("FINSLER_MODE", m);
    }
    cmd.output().expect("binary runs")
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("homfinsler").chain(args.iter().copied());
    let code = run_with(argv, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const SOLVABLE: &str = r#"
dim_g = 2
v = [0.0, 0.5]
mode = "validated"

[[structure_constants]]
i = 1
j = 2
k = 2
c = 1.0

[metric]
family = "infinite_series"
"#;

#[test]
fn abelian_s_is_zero_on_every_path() {
    let (code, out, _) = call(&[
        "s-curv", "--space", "catalog:abelian3", "--metric", "exponential", "--y", "1,1,1", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let s: f64 = r.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(s, 0.0, "{r}");
    }
}

#[test]
fn singular_direction_names_the_locus() {
    let o = spawn(&["s-curv", "--space", "catalog:solvable2", "--metric", "infinite_series", "--y", "1,0"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s = 0 (infinite series Q)"));
}

#[test]
fn config_mode_is_overridden_by_env_then_flag() {
    let f = config_file(SOLVABLE);
    let path = f.path().to_str().unwrap();
    let args = ["s-curv", "--space", path, "--y", "1,0.3"];
    // config says validated and the infinite series fails the Shen check
    let o = spawn(&args, None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Shen"));
    let o = spawn(&args, Some("formal"));
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--mode", "validated"]);
    assert_eq!(spawn(&with_flag, Some("formal")).status.code(), Some(3));
}

#[test]
fn validated_exponential_succeeds() {
    let o = spawn(
        &["s-curv", "--space", "catalog:heisenberg3", "--metric", "exponential", "--y", "1,1,1", "--format", "jsonl"],
        Some("validated"),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stderr.is_empty());
    let first: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&o.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(first["path"], "closed_form");
    assert!((first["S"].as_f64().unwrap() + 0.3271501523760837508).abs() < 1e-14);
}

#[test]
fn config_errors_exit_two() {
    let bad = config_file("dim_g = 2\nv = [0.5]\n");
    let o = spawn(&["validate", "--space", bad.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(spawn(&["validate", "--space", "/nonexistent/space.toml"], None).status.code(), Some(2));
    assert_eq!(spawn(&["volume", "--metric", "exponential"], None).status.code(), Some(2));
    assert_eq!(spawn(&["catalog", "--format", "xml"], None).status.code(), Some(2));
}

#[test]
fn validate_reports_failing_check_in_validated_mode() {
    let f = config_file(
        "dim_g = 3\nv = [0.5, 0.0, 0.0]\ncompletion = \"explicit\"\n\
         [[structure_constants]]\ni = 1\nj = 2\nk = 3\nc = 1.0\n",
    );
    let path = f.path().to_str().unwrap();
    let (code, out, err) = call(&["validate", "--space", path, "--mode", "validated"]);
    assert_eq!(code, 3);
    assert!(out.contains("antisymmetry"));
    assert!(err.contains("antisymmetry"), "{err}");
    assert_eq!(call(&["validate", "--space", path]).0, 0);
}

#[test]
fn table_csv_and_jsonl_carry_the_same_numbers() {
    let base = ["berwald", "--space", "catalog:solvable2", "--metric", "exponential", "--y", "1,0.3"];
    let with = |fmt: &str| {
        let mut a = base.to_vec();
        a.extend(["--format", fmt]);
        let (code, out, _) = call(&a);
        assert_eq!(code, 0);
        out
    };
    let numbers = |line: &str, sep: char| -> Vec<f64> {
        line.split(sep).filter_map(|t| t.trim().parse::<f64>().ok()).collect()
    };
    let table: Vec<Vec<f64>> = with("table")
        .lines()
        .skip(2)
        .map(|l| numbers(l, ' '))
        .collect();
    let csv: Vec<Vec<f64>> = with("csv").lines().skip(1).map(|l| numbers(l, ',')).collect();
    let json: Vec<Vec<f64>> = with("jsonl")
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object().unwrap().values().filter_map(|x| x.as_f64()).collect()
        })
        .collect();
    assert_eq!(table, csv);
    assert_eq!(csv, json);
    assert_eq!(csv.len(), 5);
}

#[test]
fn scan_is_byte_identical_and_ordered() {
    let args = ["scan", "--space", "catalog:heisenberg3", "--metric", "exponential", "--grid", "100", "--seed", "11", "--format", "csv"];
    let a = spawn(&args, None);
    let b = spawn(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,y1,y2,y3,s,s_closed,s_generic,abs_diff,status");
    for (i, l) in lines.enumerate() {
        assert!(l.starts_with(&format!("{i},")), "{l}");
        assert!(l.ends_with(",ok"), "{l}");
    }
    let c = spawn(&["scan", "--space", "catalog:heisenberg3", "--metric", "exponential", "--grid", "100", "--seed", "12", "--format", "csv"], None);
    assert_ne!(text.as_bytes(), c.stdout.as_slice());
}

#[test]
fn scan_records_singular_rows_without_failing() {
    let (code, out, _) = call(&[
        "scan", "--space", "catalog:solvable2", "--metric", "kropina", "--grid", "4", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    for l in out.lines().skip(1) {
        // no closed form for Kropina, generic value still reported
        assert!(l.contains(",,"), "{l}");
    }
}

#[test]
fn volume_from_flags_and_from_space() {
    let (code, out, _) = call(&["volume", "--metric", "exponential", "--b", "0.3", "--n", "2", "--form", "ht", "--format", "csv"]);
    assert_eq!(code, 0);
    let f: f64 = out.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((f - 1.044989760476601222).abs() < 1e-12);
    let (code, out, _) = call(&["volume", "--space", "catalog:heisenberg3", "--metric", "randers", "--form", "bh", "--format", "csv"]);
    assert_eq!(code, 0);
    let f: f64 = out.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((f - 0.75f64.powi(2)).abs() < 1e-10);
    let (code, _, err) = call(&["volume", "--metric", "infinite_series", "--b", "0.5", "--n", "3", "--form", "bh"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn custom_metric_without_closed_form() {
    let (code, out, _) = call(&[
        "s-curv", "--space", "catalog:heisenberg3", "--metric", "custom:1,0.2,0.1", "--y", "1,1,1", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("closed_form,"));
    assert!(out.lines().nth(1).unwrap().ends_with(",,"));
}
