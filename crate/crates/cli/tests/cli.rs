use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use delsarte_cli::record::ResultRecord;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_delsarte"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn solve(name: &str, extra: &[&str]) -> Output {
    let path = data(name);
    let mut args = vec!["solve", "--instance", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_corpus_exit_codes_and_values() {
    let cases: &[(&str, i32, Option<f64>)] = &[
        ("z4_interval.json", 0, Some(2.0)),
        ("z6_interval.json", 0, Some(2.0)),
        ("whole_group.json", 0, Some(6.0)),
        ("z7_point.json", 0, Some(1.0)),
        ("z4_half.json", 0, Some(2.0)),
        ("z2xz4_half.json", 0, Some(2.0)),
        ("trivial_q.json", 2, None),
        ("malformed.json", 1, None),
        ("zero_missing.json", 1, None),
    ];
    for &(name, code, value) in cases {
        let o = solve(name, &["--oracle"]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        if let Some(v) = value {
            let rec = ResultRecord::from_json(&stdout(&o)).unwrap();
            assert!((rec.value.unwrap() - v).abs() < 1e-9, "{name}");
            assert!(rec.oracle.unwrap().agrees);
            assert!(rec.dual.unwrap().verified);
            assert!(rec.residuals.unwrap().is_member);
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let o = solve("malformed.json", &[]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn record_round_trips_and_rechecks() {
    let o = solve("z6_interval.json", &[]);
    let text = stdout(&o);
    let rec = ResultRecord::from_json(&text).unwrap();
    assert_eq!(ResultRecord::from_json(&rec.to_json()).unwrap(), rec);
    let again = rec.recheck().unwrap().unwrap();
    let orig = rec.residuals.as_ref().unwrap();
    for (a, b) in [
        (again.min_spectrum, orig.min_spectrum),
        (again.max_imag, orig.max_imag),
        (again.normalization_error, orig.normalization_error),
        (again.max_positive_off_w, orig.max_positive_off_w),
        (again.max_spectrum_off_q, orig.max_spectrum_off_q),
    ] {
        assert!((a - b).abs() <= 1e-12);
    }
    assert_eq!(again.is_member, orig.is_member);
}

#[test]
fn output_is_deterministic_and_timing_is_opt_in() {
    let a = stdout(&solve("z6_interval.json", &[]));
    let b = stdout(&solve("z6_interval.json", &[]));
    assert_eq!(a, b);
    assert!(!a.contains("timing_ms"));
    assert!(stdout(&solve("z6_interval.json", &["--timing"])).contains("timing_ms"));
    let v1 = stdout(&run(&["verify", "reduction", "--seed", "3", "--count", "12", "--format", "json"]));
    let v2 = stdout(&run(&["verify", "reduction", "--seed", "3", "--count", "12", "--format", "json"]));
    assert_eq!(v1, v2);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = solve("z4_interval.json", &["--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let rec = ResultRecord::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(rec.value, Some(2.0));
}

#[test]
fn csv_summary() {
    let text = stdout(&solve("z4_interval.json", &["--format", "csv"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance_digest,status,value,certified_upper_bound,is_member");
    assert!(lines[1].contains(",optimal,2,"));
}

#[test]
fn reduce_reports_the_subgroup() {
    let path = data("z4_half.json");
    let o = run(&["reduce", "--instance", path.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subgroup"]["order"], 2);
    assert_eq!(v["reduced"]["group"], serde_json::json!([2]));
    assert!(v["equivalence"]["gap"].as_f64().unwrap().abs() <= 1e-8);

    let path = data("z2xz4_half.json");
    let o = run(&["reduce", "--instance", path.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subgroup"]["order"], 2);
    assert_eq!(v["reduced"]["Q"], "all");

    // equality fails when Q is not a union of restriction fibers
    let path = data("z12_unsaturated.json");
    let o = run(&["reduce", "--instance", path.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fiber_saturated"], false);
    assert_eq!(v["equivalence"]["sandwich_holds"], true);
    assert_eq!(v["Qstar"], serde_json::json!([[0], [3]]));
    assert!(v["equivalence"]["value_g0"].is_null());
    assert!(v["equivalence"]["value_g"].as_f64().unwrap() > 0.07);

    let path = data("z4_interval.json");
    let o = run(&["reduce", "--instance", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subgroup"]["index"], 1);
    assert!(v.get("equivalence").is_none());
}

#[test]
fn verify_suites() {
    assert_eq!(run(&["verify", "posdef", "--seed", "7", "--count", "200"]).status.code(), Some(0));
    let o = run(&["verify", "oracle", "--seed", "1", "--count", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max gap"));
    for s in ["extension", "net"] {
        assert_eq!(run(&["verify", s, "--count", "20"]).status.code(), Some(0), "{s}");
    }
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(1));
}

#[test]
fn verify_lists_reproducible_failing_seeds() {
    let o = run(&["verify", "reduction", "--seed", "1", "--count", "50", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(o.status.code(), Some(if failures.is_empty() { 0 } else { 4 }));
    if let Some(f) = failures.first() {
        let seed = f["seed"].as_u64().unwrap().to_string();
        let again = run(&["verify", "reduction", "--seed", &seed, "--count", "1", "--format", "json"]);
        let w: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
        assert_eq!(w["failures"][0], *f);
    }
}

#[test]
fn net_demo() {
    let path = data("z4_interval.json");
    let o = run(&["net", "--instance", path.to_str().unwrap(), "--epsilon", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 41);
    assert_eq!(v["centers"].as_array().unwrap().len(), 4);
    assert!(v["error"].as_f64().unwrap() < 0.2);
    let o = run(&["net", "--instance", path.to_str().unwrap(), "--epsilon", "0.5", "--k", "[[0]]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["centers"].as_array().unwrap().len(), 1);
    let path = data("trivial_q.json");
    assert_eq!(run(&["net", "--instance", path.to_str().unwrap(), "--epsilon", "0.5"]).status.code(), Some(2));
}

#[test]
fn sweeps() {
    let o = run(&["sweep", "--family", "cyclic:n=4..8,k=1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<String>> = text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
    let value = |n: &str| rows.iter().find(|r| r[0] == n).unwrap()[4].parse::<f64>().unwrap();
    assert!((value("4") - 2.0).abs() < 1e-9);
    assert!((value("6") - 2.0).abs() < 1e-9);

    let o = run(&["sweep", "--family", "cyclic:n=10,k=2,r=0..5"]);
    let vals: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse::<f64>().unwrap_or(f64::NEG_INFINITY))
        .collect();
    assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{vals:?}");
    assert!(!stdout(&o).contains("false"));

    let o = run(&["sweep", "--family", "cyclic:n=9..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,k,r,status,value,monotone\n");

    assert_eq!(run(&["sweep", "--family", "torus:n=3"]).status.code(), Some(1));
    let a = stdout(&run(&["sweep", "--family", "cyclic:n=3..12,k=0..2,r=0..1"]));
    let b = stdout(&run(&["sweep", "--family", "cyclic:n=3..12,k=0..2,r=0..1"]));
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--instance", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
