use std::fs;
use std::process::{Command, Output};

use revbridge::report::ExitStatus;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revbridge")).args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_fixture_text() {
    let o = run(&["verify", &fixture("worked_example.rc"), "--format", "text", "--no-timestamp"]);
    assert_eq!(code(&o), 0);
    let t = stdout(&o);
    assert!(t.contains("bound: 25 ≤ 25 (pass)"));
    assert!(t.contains("note: P[x5][x5]: reference 1, gate list gives 0"));
}

#[test]
fn timestamp_is_optional() {
    let with = run(&["parse", &fixture("and2.rc")]);
    let v: serde_json::Value = serde_json::from_slice(&with.stdout).unwrap();
    let ts = v["generated_at"].as_str().unwrap();
    assert!(chrono::DateTime::parse_from_rfc3339(ts).is_ok(), "{ts}");
    let without = run(&["parse", &fixture("and2.rc"), "--no-timestamp"]);
    let v: serde_json::Value = serde_json::from_slice(&without.stdout).unwrap();
    assert!(v["generated_at"].is_null());
}

#[test]
fn malformed_circuit_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rc");
    fs::write(&bad, ".n 2\n.p 1\n.gate x1 : x2\n.end\n").unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["verify", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), ExitStatus::Parse.code());
    assert!(o.stdout.is_empty());
    assert!(!out.exists());
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:7"));
}

#[test]
fn missing_input_is_io_error() {
    let o = run(&["parse", "/nonexistent/circuit.rc"]);
    assert_eq!(code(&o), ExitStatus::Io.code());
    let o = run(&["parse", &fixture("and2.rc"), "--out", "/nonexistent/dir/out.json"]);
    assert_eq!(code(&o), ExitStatus::Io.code());
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["atpg", &fixture("and2.rc"), "--sets", "T6"])), ExitStatus::Usage.code());
    assert_eq!(code(&run(&["verify", &fixture("and2.rc"), "--oracle-cap", "0"])), ExitStatus::Usage.code());
    assert_eq!(code(&run(&["simulate", &fixture("and2.rc")])), ExitStatus::Usage.code());
}

#[test]
fn atpg_output_round_trips_through_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = fixture("worked_example.rc");
    let verify = run(&["verify", &circuit, "--no-timestamp"]);
    let want: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();

    for format in ["json", "text"] {
        let tests = dir.path().join(format!("tests.{format}"));
        let o = run(&["atpg", &circuit, "--format", format, "--out", tests.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let sim = run(&["simulate", &circuit, "--tests", tests.to_str().unwrap(), "--no-timestamp"]);
        assert_eq!(code(&sim), 0, "{}", String::from_utf8_lossy(&sim.stderr));
        let got: serde_json::Value = serde_json::from_slice(&sim.stdout).unwrap();
        assert_eq!(got["faults"], want["faults"], "{format}");
        assert_eq!(got["summary"], want["summary"]);
    }
}

#[test]
fn doctored_test_set_fails_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let tests = dir.path().join("t1.txt");
    // T1 alone fills every mask but misses most bridges
    fs::write(&tests, "000 0000000\n000 1111111\n111 0000000\n111 1111111\n").unwrap();
    let o = run(&["simulate", &fixture("worked_example.rc"), "--tests", tests.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&o), ExitStatus::CoverageFailure.code());
    assert!(stdout(&o).contains("undetected: XPair"));

    // every bridge detected but no EXOR fully stimulated
    fs::write(&tests, "#\n").unwrap();
    let o = run(&["simulate", &fixture("two_outputs.rc"), "--tests", tests.to_str().unwrap()]);
    assert_eq!(code(&o), ExitStatus::CoverageFailure.code());
}

#[test]
fn unresolved_has_its_own_exit_code() {
    let o = run(&["verify", &fixture("worked_example.rc"), "--no-fallback", "--sets", "T1", "--oracle-cap", "4"]);
    assert_eq!(code(&o), ExitStatus::Unresolved.code());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["summary"]["unresolved"].as_u64().unwrap() > 0);
    assert_eq!(v["summary"]["undetected"], 0);
    assert!(!v["failing"].as_array().unwrap().is_empty());
}

#[test]
fn csv_reports() {
    let o = run(&["faults", &fixture("two_outputs.rc"), "--format", "csv"]);
    let t = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(t.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["class", "net1", "net2", "polarity", "verdict", "evidence"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(&rows[0][0], "ExorInternal");
    assert_eq!(rows[2].iter().take(4).collect::<Vec<_>>(), ["XPair", "x1", "x2", "WiredAnd"]);

    let o = run(&["verify", &fixture("and2.rc"), "--format", "csv"]);
    assert!(stdout(&o).contains("XPair,x1,x2,WiredAnd,Redundant,exhaustive\n"));
}

#[test]
fn zero_controls_and_aux_option() {
    let base = run(&["faults", &fixture("not_gates.rc")]);
    let with_aux = run(&["faults", &fixture("not_gates.rc"), "--include-aux"]);
    let count = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["fault_counts"]["x_pair"].clone();
    assert_eq!(count(&base), 2);
    assert_eq!(count(&with_aux), 6);
    let parse = run(&["parse", &fixture("not_gates.rc"), "--format", "text"]);
    assert!(stdout(&parse).contains(".gate c1 :\n"));
}

#[test]
fn pprm_text() {
    let o = run(&["pprm", &fixture("and2.rc"), "--format", "text"]);
    assert_eq!(stdout(&o), "f1 = c1 ^ x1x2\n");
}
