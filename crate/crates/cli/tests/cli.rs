//! End-to-end CLI behavior: wire formats, exit codes, determinism, and the
//! cross-command contracts that the JSON reports promise.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cfrac")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("CFRAC_DEFAULT_TOL")
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> Value {
    assert!(
        !output.stdout.is_empty(),
        "expected a report, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON report")
}

fn write_spec(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn eval_modes_cover_convergent_tail_and_reverse() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "onetwo.json",
        r#"{"kind": "list", "elements": [{"re": 1}, {"re": 2}]}"#,
    );
    let spec = spec.to_str().unwrap();

    let out = run(&["eval", "--spec", spec, "--n", "2", "--w-re", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((r["results"]["value"]["re"].as_f64().unwrap() - 0.75).abs() < 1e-14);

    // tail run from the -B_n/B_{n-1} family seed walks through the pole
    let out = run(&[
        "eval", "--spec", spec, "--n", "2", "--w-re", "-3", "--mode", "tail",
    ]);
    let r = report(&out);
    let tails = r["results"]["tail_values"].as_array().unwrap();
    assert_eq!(tails.len(), 3);
    assert!((tails[1]["re"].as_f64().unwrap() + 1.0).abs() < 1e-14);
    assert_eq!(tails[2], Value::String("inf".into()));
    assert_eq!(r["results"]["value"], Value::String("inf".into()));

    let out = run(&["eval", "--spec", spec, "--n", "2", "--mode", "reverse"]);
    let r = report(&out);
    assert!((r["results"]["value"]["re"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-14);

    // infinity is a first-class seed: f_2(inf) = A_1/B_1 = 1
    let out = run(&["eval", "--spec", spec, "--n", "2", "--w-inf"]);
    let r = report(&out);
    assert!((r["results"]["value"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn certify_reports_minimal_constants_and_gates_requests() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "ones.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 8}"#,
    );
    let spec = spec.to_str().unwrap();

    for (theorem, expected_c) in [("origin", 1.0), ("shifted", 0.5)] {
        let out = run(&[
            "certify",
            "--spec",
            spec,
            "--theorem",
            theorem,
            "--target",
            "convergents",
        ]);
        assert_eq!(out.status.code(), Some(0), "theorem {theorem}");
        let r = report(&out);
        assert!((r["results"]["minimal_C"].as_f64().unwrap() - expected_c).abs() < 1e-12);
        assert_eq!(r["results"]["certificate"]["passed"], Value::Bool(true));
    }

    // an oversized radius still certifies; an undersized one is rejected
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "convergents",
        "--C",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "convergents",
        "--C",
        "0.9",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // reverse and tails targets
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "reverse",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "tails",
        "--n",
        "2",
        "--w-re",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["certificate"]["checked"], Value::from(3));

    // a seed outside the disk is an invalid request, not a failure
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "convergents",
        "--w-re",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "certify",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--target",
        "convergents",
        "--w-inf",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn slack_resolution_prefers_flag_over_env_over_default() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "ones.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 4}"#,
    );
    let spec = spec.to_str().unwrap();

    let out = run(&["eval", "--spec", spec, "--n", "1"]);
    let r = report(&out);
    assert_eq!(r["tolerances"]["slack"].as_f64().unwrap(), 1e-9);

    let out = Command::new(bin())
        .args(["eval", "--spec", spec, "--n", "1"])
        .env("CFRAC_DEFAULT_TOL", "1e-6")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["tolerances"]["slack"].as_f64().unwrap(), 1e-6);

    let out = Command::new(bin())
        .args(["eval", "--spec", spec, "--n", "1", "--tol", "1e-3"])
        .env("CFRAC_DEFAULT_TOL", "1e-6")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["tolerances"]["slack"].as_f64().unwrap(), 1e-3);

    let out = Command::new(bin())
        .args(["eval", "--spec", spec, "--n", "1"])
        .env("CFRAC_DEFAULT_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_grid_is_deterministic_and_counts_skipped_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "ones.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 6}"#,
    );
    let spec = spec.to_str().unwrap();
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");

    for csv in [&csv_a, &csv_b] {
        let out = run(&[
            "region-grid",
            "--spec",
            spec,
            "--theorem",
            "shifted",
            "--resolution",
            "3",
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r["results"]["total_points"], Value::from(9));
        assert_eq!(r["results"]["skipped"], Value::from(4));
        assert_eq!(r["results"]["evaluated"], Value::from(5));
        assert_eq!(r["results"]["in_disk"], Value::from(5));
    }
    let a = std::fs::read(&csv_a).unwrap();
    let b = std::fs::read(&csv_b).unwrap();
    assert_eq!(a, b, "grid output is byte-for-byte deterministic");

    // origin theorem at theta = 0: the sector pins seeds to [0, C]
    let csv_c = dir.path().join("c.csv");
    let out = run(&[
        "region-grid",
        "--spec",
        spec,
        "--theorem",
        "origin",
        "--resolution",
        "3",
        "--csv",
        csv_c.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["evaluated"], Value::from(2));
    assert_eq!(r["results"]["skipped"], Value::from(7));

    let out = run(&[
        "region-grid",
        "--spec",
        spec,
        "--theorem",
        "shifted",
        "--resolution",
        "1",
        "--csv",
        dir.path().join("d.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_reports_are_reproducible_for_a_seed() {
    let strip_timing = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip_timing(report(&run(&[
        "sweep",
        "--theorem",
        "shifted",
        "--samples",
        "500",
        "--seed",
        "7",
    ])));
    let b = strip_timing(report(&run(&[
        "sweep",
        "--theorem",
        "shifted",
        "--samples",
        "500",
        "--seed",
        "7",
    ])));
    assert_eq!(a, b);
    assert_eq!(a["seed"], Value::from(7));
    assert_eq!(a["results"]["violations"], Value::from(0));

    let c = strip_timing(report(&run(&[
        "sweep",
        "--theorem",
        "shifted",
        "--samples",
        "500",
        "--seed",
        "8",
    ])));
    assert_ne!(a["results"]["worst_margin"], c["results"]["worst_margin"]);
}

#[test]
fn sweep_gates_its_angle_range() {
    let out = run(&[
        "sweep",
        "--theorem",
        "origin",
        "--samples",
        "10",
        "--theta-max",
        "0.8",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "sweep",
        "--theorem",
        "shifted",
        "--samples",
        "10",
        "--theta-max",
        "1.6",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "sweep",
        "--theorem",
        "origin",
        "--samples",
        "10",
        "--theta-max",
        "0.7",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn counterexample_csv_has_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ce.csv");
    let out = run(&[
        "counterexample",
        "--t-min",
        "0.5",
        "--t-max",
        "0.5",
        "--steps",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "t,lhs_squared,threshold,violates");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let lhs: f64 = fields[1].parse().unwrap();
    let threshold: f64 = fields[2].parse().unwrap();
    assert!((lhs - 0.572860).abs() < 1e-5);
    assert!((threshold - 0.629961).abs() < 1e-5);
    assert_eq!(fields[3], "true");
}

#[test]
fn generator_specs_materialize_like_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "geo.json",
        r#"{"kind": "geometric", "b0": {"re": 1}, "ratio": {"re": 0.5}, "count": 6}"#,
    );
    // f_1 = 1/b_1 = 1/(b0 * ratio) = 2
    let out = run(&["eval", "--spec", spec.to_str().unwrap(), "--n", "1"]);
    let r = report(&out);
    assert!((r["results"]["value"]["re"].as_f64().unwrap() - 2.0).abs() < 1e-14);

    // constant family at depth four: the Fibonacci ratio 3/5
    let ones = write_spec(
        dir.path(),
        "ones4.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 4}"#,
    );
    let out = run(&["eval", "--spec", ones.to_str().unwrap(), "--n", "4"]);
    let r = report(&out);
    assert!((r["results"]["value"]["re"].as_f64().unwrap() - 0.6).abs() < 1e-14);
}

#[test]
fn invalid_specs_split_parse_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();

    let gone = dir.path().join("missing.json");
    let out = run(&["eval", "--spec", gone.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let broken = write_spec(dir.path(), "broken.json", r#"{"kind": "cons"#);
    let out = run(&["eval", "--spec", broken.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // well-formed JSON, bad values: domain error
    let zero = write_spec(
        dir.path(),
        "zero.json",
        r#"{"kind": "list", "elements": [{"re": 0, "im": 0}]}"#,
    );
    let out = run(&["eval", "--spec", zero.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let empty_count = write_spec(
        dir.path(),
        "count.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 0}"#,
    );
    let out = run(&["eval", "--spec", empty_count.to_str().unwrap(), "--n", "0"]);
    assert_eq!(out.status.code(), Some(3));

    // declared sector must hold every element
    let outside = write_spec(
        dir.path(),
        "outside.json",
        r#"{"kind": "list", "elements": [{"re": 0, "im": 1}], "sector_half_angle": 0.5}"#,
    );
    let out = run(&["eval", "--spec", outside.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.status.code(), Some(3));

    // depth beyond the materialized count
    let ones = write_spec(
        dir.path(),
        "ones.json",
        r#"{"kind": "constant", "b": {"re": 1}, "count": 2}"#,
    );
    let out = run(&["eval", "--spec", ones.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
}
