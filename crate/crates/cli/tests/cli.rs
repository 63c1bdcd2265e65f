use std::f64::consts::{PI, SQRT_2};
use std::process::{Command, Output};

use serde_json::Value;

fn heinz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heinz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of CSV output, header dropped.
fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn constants_table() {
    let o = heinz(&["constants", "--n", "2..4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 3);
    for (row, c) in rows.iter().zip([2.0 / PI, SQRT_2 - 1.0, (4.0 - PI) / PI]) {
        assert!((num(&row[1]) - c).abs() < 1e-11);
        assert!(num(&row[4]) < 1e-12);
    }
    assert!(rows[0][1].starts_with("0.6366197"));
    assert!(rows[1][1].starts_with("0.4142135"));
    assert!(rows[2][1].starts_with("0.2732395"));

    let o = heinz(&["constants", "--n", "2", "--format", "csv"]);
    assert_eq!(csv_rows(&o).len(), 1);

    let o = heinz(&["constants", "--n", "10", "--format", "csv"]);
    let rows = csv_rows(&o);
    assert!(num(&rows[0][1]) > 0.0);
    assert_eq!(rows[0][3], "");
}

#[test]
fn profile_tables() {
    let o = heinz(&["profile", "--n", "3", "--which", "U", "--grid", "0:0.1:0.9"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 10);
    for row in &rows {
        assert!(num(&row[6]) < 1e-10, "{row:?}");
    }

    let o = heinz(&["profile", "--n", "2", "--which", "V", "--grid", "0:0.5:1"]);
    let values: Vec<f64> = csv_rows(&o).iter().map(|r| num(&r[3])).collect();
    for (v, e) in values.iter().zip([1.27324, 1.01859, 0.63662]) {
        assert!((v - e).abs() < 5e-6);
    }

    let o = heinz(&["profile", "--n", "5", "--which", "U", "--grid", "0"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][3], "0");
}

#[test]
fn monotone_passes() {
    let o = heinz(&["verify", "monotone", "--n", "2..8", "--grid", "0:0.02:1"]);
    assert_eq!(o.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["pass"], Value::Bool(true));
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    assert!(checks[0]["points"][0]["x"].is_array());
    assert!(checks[0]["summary"]["min_margin"].is_number());
}

#[test]
fn identities_are_tight() {
    let o = heinz(&["verify", "identities", "--n", "3", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = json["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["transform", "kummer", "coefficient-split"]);
    for c in json["checks"].as_array().unwrap().iter().take(2) {
        for p in c["points"].as_array().unwrap() {
            assert!(p["margin"].as_f64().unwrap().abs() < 1e-10);
        }
    }
}

#[test]
fn schwarz_suite_passes() {
    let o = heinz(&["verify", "schwarz", "--n", "3", "--seed", "7", "--samples", "200000", "--maps", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), 22);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |file: &str, threads: &str| {
        let path = dir.path().join(file);
        let status = Command::new(env!("CARGO_BIN_EXE_heinz"))
            .args(["verify", "ratio", "--n", "2,3", "--maps", "3", "--samples", "20000", "--seed", "11"])
            .arg("--output")
            .arg(&path)
            .env("HEINZ_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    let c = run("c.json", "3");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn table_and_csv_agree() {
    let args = ["verify", "sharpness", "--n", "2", "--m", "5,20"];
    let csv = stdout(&heinz(&[&args[..], &["--format", "csv"]].concat()));
    let table = stdout(&heinz(&[&args[..], &["--format", "table"]].concat()));
    let table_cells: Vec<&str> = table.split_whitespace().collect();
    for line in csv.lines().skip(1) {
        for cell in line.split(',').skip(3) {
            assert!(table_cells.contains(&cell), "{cell} missing from table");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(heinz(&["constants", "--tol", "1e-14"]).status.code(), Some(3));
    assert_eq!(heinz(&["constants", "--n", "1"]).status.code(), Some(3));
    assert_eq!(heinz(&["constants", "--n", "65"]).status.code(), Some(3));
    assert_eq!(heinz(&["profile", "--n", "3", "--which", "U", "--grid", "0:0:1"]).status.code(), Some(3));
    assert_eq!(heinz(&["profile", "--n", "3", "--which", "W", "--grid", "0"]).status.code(), Some(3));
    assert_eq!(heinz(&["profile", "--n", "3", "--which", "U", "--grid", "1.5"]).status.code(), Some(3));
    assert_eq!(heinz(&["verify", "nonsense"]).status.code(), Some(3));
    assert_eq!(heinz(&["verify", "schwarz", "--samples", "10"]).status.code(), Some(3));
    assert_eq!(heinz(&["verify", "schwarz", "--r", "0.99"]).status.code(), Some(3));
    assert_eq!(heinz(&[]).status.code(), Some(3));
    assert_eq!(heinz(&["--help"]).status.code(), Some(0));
    assert_eq!(heinz(&["--version"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_heinz"))
        .args(["constants"])
        .env("HEINZ_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    // Beyond the refinement budget of the quadrature.
    let o = heinz(&["verify", "sharpness", "--n", "64", "--r", "0.9999999", "--tol", "1e-13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_heinz"))
        .args(["constants", "--n", "3", "--format", "csv", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("n,C_n,error_bound,reference,discrepancy\n3,0.414213562373"));
}
