use std::path::Path;
use std::process::{Command, Output};

use hetlab::report::Report;
use serde_json::Value;

fn hetlab<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_hetlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const SMALL: [&str; 4] = ["--da", "6", "--db", "6"];

#[test]
fn verify_small_catalog_passes() {
    let out = hetlab(["verify"].iter().chain(&SMALL).chain(&["--cases", "GG4,GG7,L1,L10,M16"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let cases = v["verify"]["cases"].as_array().unwrap();
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, vec!["GG4", "GG7", "L1", "L10", "M16"]);
    assert_eq!(v["summary"]["counts"]["pass"], 5);
    assert!(v["summary"].get("wall_time_seconds").is_none());
}

#[test]
fn timing_is_the_only_varying_field() {
    let out = hetlab(["verify", "--timing", "--cases", "GG7"].iter().chain(&SMALL));
    let v = json(&out);
    assert!(v["summary"]["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert!(v["summary"]["config"].get("timing").is_none());
}

#[test]
fn zero_function_tolerance_fails_every_matrix_function_case() {
    let out = hetlab(["verify", "--fn-tol", "0"].iter().chain(&SMALL));
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    for c in v["verify"]["cases"].as_array().unwrap() {
        if c["kind"] == "matrix-function" && c["status"] != "skip" {
            assert_eq!(c["status"], "fail", "{}", c["id"]);
        }
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"da": 5, "db": 7, "A": 1.5, "B": 0.5, "cases": ["GG7", "L9"]}"#).unwrap();
    let out = hetlab(["verify", "--config", cfg.to_str().unwrap(), "--db", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let echo = &v["summary"]["config"];
    assert_eq!((echo["da"].as_u64(), echo["db"].as_u64()), (Some(5), Some(6)));
    let l9 = &v["verify"]["cases"][1];
    assert_eq!(l9["status"], "skip");
    assert_eq!(l9["note"], "requires A=B");
}

#[test]
fn report_file_is_written_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = hetlab(["verify", "--cases", "GG7,II3", "--out", path.to_str().unwrap()].iter().chain(&SMALL));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn io_and_config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope").join("r.json");
    assert_eq!(hetlab(["verify", "--out", missing.to_str().unwrap()]).status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[1, 2").unwrap();
    assert_eq!(hetlab(["verify", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"colour": 3}"#).unwrap();
    assert_eq!(hetlab(["verify", "--config", unknown.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--config", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--da", "1"]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--da", "65"]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--A", "-1"]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--cases", "XX1"]).status.code(), Some(1));
    assert_eq!(hetlab(["verify", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(hetlab(["launch"]).status.code(), Some(1));
    assert_eq!(hetlab(Vec::<&str>::new()).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(hetlab(["--help"]).status.code(), Some(0));
    assert_eq!(hetlab(["--version"]).status.code(), Some(0));
    assert_eq!(hetlab(["sweep", "--help"]).status.code(), Some(0));
}

#[test]
fn mismatched_mode_in_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(&cfg, r#"{"mode": "sweep"}"#).unwrap();
    assert_eq!(hetlab(["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

#[test]
fn sweep_csv_shape() {
    let args = ["sweep", "--k-grid", "0.05,0.1", "--format", "csv", "--da", "5", "--db", "5"];
    let out = hetlab(args);
    assert!(matches!(out.status.code(), Some(0) | Some(2)));
    let (header, rows) = csv_rows(&out);
    assert_eq!(
        header,
        ["r", "k_exact", "k_first_order", "deficit_SSdag", "deficit_SdagS", "sn_residual", "error"]
    );
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0].as_str(), rows[1][0].as_str()), ("0.1", "0.05"));
    for row in &rows {
        assert!(row[3].is_empty() != row[6].is_empty(), "either measured or errored: {row:?}");
    }
    assert_eq!(hetlab(args).stdout, out.stdout);
    let small = hetlab(["sweep", "--k-grid", "0.01", "--da", "4", "--db", "4"]);
    let k: f64 = json(&small)["sweep"]["rows"][0]["k_exact"].as_f64().unwrap();
    assert!((k - 0.019802).abs() < 1e-6);
}

#[test]
fn sweep_rejects_bad_grids() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.json");
    std::fs::write(&cfg, r#"{"k_grid": []}"#).unwrap();
    assert_eq!(hetlab(["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(hetlab(["sweep", "--k-grid", "1.2"]).status.code(), Some(1));
    assert_eq!(hetlab(["sweep", "--k-grid", "0"]).status.code(), Some(1));
}

#[test]
fn converge_table_and_verdicts() {
    let out = hetlab(["converge", "--dims", "4,6,8", "--cases", "GG7,M15,M16", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["case", "d", "residual", "verdict", "error"]);
    assert_eq!(rows.len(), 9);
    let verdict = |case: &str| rows.iter().find(|r| r[0] == case).unwrap()[3].clone();
    assert_eq!(verdict("GG7"), "exact");
    assert_eq!(verdict("M15"), "decreasing");
    assert_eq!(verdict("M16"), "exact");
    assert_eq!(hetlab(["converge", "--dims", "8"]).status.code(), Some(1));
    assert_eq!(hetlab(["converge", "--dims", "8,6,10"]).status.code(), Some(1));
}

#[test]
fn converge_markdown_lists_deviation_notes() {
    let out = hetlab(["converge", "--dims", "4,5,6", "--cases", "GG7", "--format", "markdown"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| GG7 |"));
    for note in [
        hetlab::suite::NOTE_LADDER,
        hetlab::suite::NOTE_TRIG_QUOTIENT,
        hetlab::suite::NOTE_PRINTED_ORDERING,
        hetlab::suite::NOTE_AMPLITUDE_PHASE,
    ] {
        assert!(text.contains(note));
    }
}

#[test]
fn classical_constant_frequency() {
    let out = hetlab(["classical", "--omega", "2", "--t0", "0", "--t1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let theta = v["classical"]["classical"]["theta_end"].as_f64().unwrap();
    assert!((theta - 2.0).abs() <= 1e-8);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn classical_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.csv", "t,omega_squared\n0,4\n0.5,4.5\n1,5\n");
    let out = hetlab(["classical", "--profile-csv", good.as_str(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = csv_rows(&out);
    let route = rows.iter().find(|r| r[0] == "route_discrepancy").unwrap();
    assert_eq!(route[3], "pass");

    let linear = hetlab(["classical", "--linear", "4,1"]);
    assert_eq!(linear.status.code(), Some(0));

    let unsorted = write(dir.path(), "unsorted.csv", "t,omega_squared\n0,4\n0.7,4\n0.5,4\n");
    assert_eq!(hetlab(["classical", "--profile-csv", unsorted.as_str()]).status.code(), Some(1));
    let header = write(dir.path(), "header.csv", "time,value\n0,4\n1,4\n");
    assert_eq!(hetlab(["classical", "--profile-csv", header.as_str()]).status.code(), Some(1));
    let garbage = write(dir.path(), "garbage.csv", "t,omega_squared\n0,four\n1,4\n");
    assert_eq!(hetlab(["classical", "--profile-csv", garbage.as_str()]).status.code(), Some(1));
    let short = write(dir.path(), "short.csv", "t,omega_squared\n0,4\n0.5,4\n");
    assert_eq!(hetlab(["classical", "--profile-csv", short.as_str()]).status.code(), Some(1));
    assert_eq!(hetlab(["classical", "--step", "0.5"]).status.code(), Some(1));
}
