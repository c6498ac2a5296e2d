use std::fs;
use std::process::{Command, Output};

use harmonic_kernels::parse::parse_complex;
use harmonic_kernels::specfun::gamma;
use harmonic_kernels::Complex64;
use harmonic_kernels_cli::{parse_args, Command as Cmd, Job};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_harmonic-kernels"));
    c.env_remove("HARMONIC_KERNELS_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn argv<'a>(args: &'a [&'a str]) -> impl Iterator<Item = &'a str> {
    std::iter::once("harmonic-kernels").chain(args.iter().copied())
}

#[test]
fn eval_gamma_of_one() {
    let o = run(&["eval", "gamma", "--z", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1.0000000000000000+0.0000000000000000i\n");
}

#[test]
fn parse_examples() {
    let c = parse_args(argv(&["eval", "na-resolvent", "--dim-n", "3", "--dim-z", "1", "--lambda", "2+0.5i", "--r", "1"]))
        .unwrap();
    assert_eq!(c.command, Cmd::Eval);
    assert_eq!(c.target, "na-resolvent");
    let c = parse_args(argv(&[
        "verify", "transform", "--dim-n", "7", "--dim-z", "3", "--lambda", "1.5", "--r", "0.7", "--tol", "1e-6",
    ]))
    .unwrap();
    assert_eq!(c.command, Cmd::Verify);
    assert_eq!(c.tol, Some(1e-6));
    let Job::Verify(case) = c.job else { panic!("verify job expected") };
    assert_eq!(case.tolerance, 1e-6);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "na-resolvent", "--lambda", "nonsense"][..],
        &["eval", "gamma", "--z", "1", "--frobnicate", "2"],
        &["verify", "lemma31", "--a", "1", "--b", "1", "--c", "2", "--mu", "1", "--x", "2", "--nu", "1"],
        &["verify", "no-such-identity"],
        &["frobnicate"],
        &[],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("na-resolvent"));
}

#[test]
fn verify_ln2_instance() {
    let o = run(&["verify", "lemma31", "--a", "1", "--b", "1", "--c", "2", "--mu", "1", "--x", "2", "--tol", "1e-9"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["identity"], "lemma31");
    assert!((r["lhs_re"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-9);
}

#[test]
fn exit_codes_for_fail_and_numerical_error() {
    let fail = run(&["verify", "recurrence", "--n", "2", "--lambda", "1", "--r", "1", "--tol", "1e-16"]);
    assert_eq!(code(&fail), 1);
    let pole = run(&["verify", "closed-form", "--m", "1", "--lambda", "0", "--r", "1"]);
    assert_eq!(code(&pole), 3);
    let v: Value = serde_json::from_str(&stdout(&pole)).unwrap();
    assert_eq!(v[0]["params"]["error_kind"], "PoleError");
    assert_eq!(v[0]["lhs_re"], Value::Null);
    // a precondition violation is skipped, not a numerical error
    let domain = run(&["verify", "transform", "--dim-n", "4", "--dim-z", "0", "--lambda", "1", "--r", "1"]);
    assert_eq!(code(&domain), 1);
    assert_eq!(code(&run(&["eval", "gamma", "--z", "-2"])), 3);
}

#[test]
fn printed_values_reparse() {
    for z in ["0.3+0.7i", "-2.5+1e-3i", "7.25", "0.5-3i"] {
        let o = run(&["eval", "gamma", "--z", z]);
        assert_eq!(code(&o), 0);
        let printed = parse_complex(stdout(&o).trim()).unwrap();
        let direct = gamma(parse_complex(z).unwrap()).unwrap();
        assert_eq!(printed.re.to_bits(), direct.re.to_bits());
        assert_eq!(printed.im.to_bits(), direct.im.to_bits());
    }
}

#[test]
fn sweep_rows() {
    let o = run(&[
        "sweep", "hyperbolic-resolvent", "--n", "3", "--lambda", "1", "--r-min", "0.5", "--r-max", "2.5", "--steps", "5",
        "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,value_re,value_im");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].starts_with("1.5000000000000000,"));
    assert!(!text.contains('\r'));
    let json = run(&["sweep", "odd-resolvent", "--m", "1", "--lambda", "1", "--r-min", "1", "--r-max", "1", "--steps", "1"]);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    let z = Complex64::new(v[0]["value_re"].as_f64().unwrap(), v[0]["value_im"].as_f64().unwrap());
    let direct = harmonic_kernels::closedform::odd_resolvent(1, Complex64::new(1.0, 0.0), 1.0).unwrap();
    assert_eq!(z, direct);
}

const CONFIG: &str = r#"{"groups": [
  {"identity": "lemma31", "tolerance": 1e-9, "grid": {"x": [2, 3, 4]},
   "points": [{"a": 1, "b": 1, "c": 2, "mu": 1}]},
  {"identity": "transform", "tolerance": 1e-6,
   "grid": {"lambda": ["2+0.5i", [0.3, 1]], "r": [0.5, 2]},
   "points": [{"dim_n": 7, "dim_z": 3}]},
  {"identity": "closed_form", "tolerance": 1e-9,
   "grid": {"lambda": [0], "r": [1]}, "points": [{"m": 2}]}
]}"#;

fn numeric_columns(v: &Value) -> Vec<Vec<Option<f64>>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "quad_error", "tolerance"]
                .iter()
                .map(|k| r[*k].as_f64())
                .collect()
        })
        .collect()
}

#[test]
fn suite_json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.json");
    fs::write(&config, CONFIG).unwrap();
    let json_path = dir.path().join("out.json");
    let csv_path = dir.path().join("out.csv");
    let cfg = config.to_str().unwrap();
    let a = run(&["suite", "--config", cfg, "--output", json_path.to_str().unwrap()]);
    let b = run(&["suite", "--config", cfg, "--format", "csv", "--output", csv_path.to_str().unwrap()]);
    // the λ = 0 closed form hits a pole
    assert_eq!(code(&a), 3);
    assert_eq!(code(&b), 3);
    let json_text = fs::read_to_string(&json_path).unwrap();
    let csv_text = fs::read_to_string(&csv_path).unwrap();
    assert!(!json_text.contains('\r') && !csv_text.contains('\r'));

    let v: Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3 + 4 + 1);
    let from_json = numeric_columns(&v);

    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "identity");
    assert!(headers.iter().any(|h| h == "param.dim_n"));
    let mut from_csv = Vec::new();
    let mut statuses = Vec::new();
    for row in reader.records() {
        let row = row.unwrap();
        from_csv.push((1..=8).map(|k| row[k].parse::<f64>().ok()).collect::<Vec<_>>());
        statuses.push(row[9].to_string());
    }
    assert_eq!(from_json, from_csv);
    let json_statuses: Vec<String> = v.as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap().into()).collect();
    assert_eq!(json_statuses, statuses);

    // text fields agree too, digit for digit
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let first = reader.records().next().unwrap().unwrap();
    assert!(json_text.contains(&format!("\"lhs_re\": {}", &first[1])));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.json");
    fs::write(&config, CONFIG).unwrap();
    let cfg = config.to_str().unwrap();
    let one = bin().env("HARMONIC_KERNELS_THREADS", "1").args(["suite", "--config", cfg]).output().unwrap();
    let many = bin().env("HARMONIC_KERNELS_THREADS", "5").args(["suite", "--config", cfg]).output().unwrap();
    assert_eq!(one.stdout, many.stdout);
    let bad = bin().env("HARMONIC_KERNELS_THREADS", "0").args(["suite", "--config", cfg]).output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.json");
    fs::write(&config, r#"{"groups": [{"identity": "lemma31", "tolerance": 1e-9, "grid": {"q": [1]}}]}"#).unwrap();
    assert_eq!(code(&run(&["suite", "--config", config.to_str().unwrap()])), 2);
    fs::write(&config, "not json").unwrap();
    assert_eq!(code(&run(&["suite", "--config", config.to_str().unwrap()])), 2);
}

#[test]
fn default_suite_passes() {
    let o = run(&["suite", "--config", "default"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.len() > 1000);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}
