//! End-to-end tests of the command-line interface: wire formats, exit
//! codes, and determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arith-equiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn smith_verify_reports_both_sides() {
    let out = run(&["smith-verify", "--lcm", "12"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"set":[1,2,3,4,6,12],"det":"32","product":"32","equal":true}"#
    );

    let out = run(&["smith-verify", "--lcm", "30"]);
    let line = stdout_of(&out);
    assert!(line.contains("\"det\":\"4096\""), "{line}");
    assert!(line.contains("\"equal\":true"), "{line}");
}

#[test]
fn smith_verify_handles_big_products_as_strings() {
    let out = run(&["smith-verify", "--lcm", "9240"]);
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(value["equal"], serde_json::Value::Bool(true));
    // 64 divisors; the determinant is far beyond 64 bits.
    assert_eq!(value["set"].as_array().unwrap().len(), 64);
    assert!(value["det"].as_str().unwrap().len() > 19);
    assert_eq!(value["det"], value["product"]);
}

#[test]
fn reconstruct_round_trip_and_error_object() {
    let out = run(&["reconstruct", "--signature", "3,5,5"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), r#"{"elements":[2,2,3]}"#);

    // Unrealizable data is still a successful run; the error is the output.
    let out = run(&["reconstruct", "--signature", "1,3"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), r#"{"error":"BoundTooSmall"}"#);

    let out = run(&["reconstruct", "--signature", ""]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), r#"{"error":"EmptySignature"}"#);

    let out = run(&["reconstruct", "--signature", "3,x,5"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn eigmult_reports_all_three_routes() {
    let out = run(&["eigmult", "--degrees", "2,3", "--power", "6"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"multiplicity":5,"oracle_cycles":5,"oracle_valuation":5}"#
    );

    let out = run(&["eigmult", "--degrees", "4", "--power", "2"]);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"multiplicity":2,"oracle_cycles":2,"oracle_valuation":2}"#
    );

    let out = run(&["eigmult", "--degrees", "0,3", "--power", "2"]);
    assert_eq!(code_of(&out), 1);
    let out = run(&["eigmult", "--degrees", "2,3", "--power", "0"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn type_classifies_single_primes() {
    let out = run(&["type", "--poly", "1,0,-7,0,0,0,0,1", "--prime", "11"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"prime":11,"status":"good","type":[2,5]}"#
    );

    let out = run(&["type", "--poly", "-2,0,1", "--prime", "2"]);
    assert_eq!(stdout_of(&out).trim(), r#"{"prime":2,"status":"ramified"}"#);

    // A composite modulus is a usage error, not data.
    let out = run(&["type", "--poly", "-2,0,1", "--prime", "4"]);
    assert_eq!(code_of(&out), 1);

    // Non-monic input is rejected up front.
    let out = run(&["type", "--poly", "5,2", "--prime", "3"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn scan_streams_one_line_per_prime() {
    let out = run(&["scan", "--poly", "-2,0,1", "--bound", "10"]);
    assert_eq!(code_of(&out), 0);
    let lines: Vec<String> = stdout_of(&out).lines().map(String::from).collect();
    assert_eq!(
        lines,
        vec![
            r#"{"prime":2,"status":"ramified"}"#,
            r#"{"prime":3,"status":"good","type":[2]}"#,
            r#"{"prime":5,"status":"good","type":[2]}"#,
            r#"{"prime":7,"status":"good","type":[1,1]}"#,
        ]
    );
    // The irreducibility caveat goes to stderr, not into the data stream.
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("irreducib"), "{stderr}");

    let out = run(&["scan", "--poly", "-2,0,1", "--bound", "1"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn long_scans_report_progress_on_stderr() {
    // 110000 is past the ten-thousandth prime, so exactly one progress
    // line appears; data stays on stdout.
    let out = run(&["scan", "--poly", "-1,1", "--bound", "110000"]);
    assert_eq!(code_of(&out), 0);
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("progress: 10000 primes"), "{stderr}");
    assert_eq!(stdout_of(&out).lines().count(), 10453);

    let out = run(&[
        "equiv", "--poly-a", "-1,1", "--poly-b", "-1,1", "--bound", "110000", "--mode", "counts",
    ]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("progress: 10000 primes"), "{stderr}");
}

#[test]
fn equiv_modes_and_determinism() {
    let args = [
        "equiv", "--poly-a", "-2,0,1", "--poly-b", "-3,0,1", "--bound", "20", "--mode", "types",
    ];
    let out = run(&args);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"bound":20,"mode":"types","primes_checked":2,"primes_skipped":[2,3],"first_mismatch":{"prime":7,"a":[1,1],"b":[2]},"agree":false}"#
    );
    // Byte-identical on a second run.
    assert_eq!(stdout_of(&run(&args)), stdout_of(&out));

    let out = run(&[
        "equiv", "--poly-a", "-2,0,1", "--poly-b", "-3,0,1", "--bound", "20", "--mode", "counts",
    ]);
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"bound":20,"mode":"counts","primes_checked":2,"primes_skipped":[2,3],"first_mismatch":{"prime":7,"a":2,"b":1},"agree":false}"#
    );

    let out = run(&[
        "equiv",
        "--poly-a",
        "3,-7,0,0,0,0,0,1",
        "--poly-b",
        "9,-21,-42,0,14,0,0,1",
        "--bound",
        "100",
        "--mode",
        "both",
    ]);
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(value["violation"], serde_json::Value::Bool(false));
    assert_eq!(value["types"]["agree"], serde_json::Value::Bool(true));
    assert_eq!(value["counts"]["agree"], serde_json::Value::Bool(true));
    assert_eq!(value["types"]["primes_skipped"], serde_json::json!([3, 7]));
}

#[test]
fn corpus_runs_write_reports_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_path = dir.path().join("pairs.json");
    let csv_path = dir.path().join("summary.csv");
    std::fs::write(
        &corpus_path,
        r#"[
            {"name": "quadratics", "a": [-2, 0, 1], "b": [-3, 0, 1]},
            {"name": "identical", "a": [1, 0, 1], "b": [1, 0, 1]}
        ]"#,
    )
    .unwrap();

    let out = run(&[
        "corpus",
        "--file",
        corpus_path.to_str().unwrap(),
        "--bound",
        "20",
        "--mode",
        "both",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    // Mismatches are data: the run itself succeeds.
    assert_eq!(code_of(&out), 0);
    let lines: Vec<serde_json::Value> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["name"], "quadratics");
    assert_eq!(lines[0]["types"]["agree"], serde_json::Value::Bool(false));
    assert_eq!(lines[1]["name"], "identical");
    assert_eq!(lines[1]["types"]["agree"], serde_json::Value::Bool(true));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut csv_lines = csv.lines();
    assert_eq!(
        csv_lines.next().unwrap(),
        "name,mode,bound,agree,first_mismatch_prime"
    );
    let rest: Vec<&str> = csv_lines.collect();
    assert_eq!(
        rest,
        vec![
            "quadratics,types,20,false,7",
            "quadratics,counts,20,false,7",
            "identical,types,20,true,",
            "identical,counts,20,true,",
        ]
    );
}

#[test]
fn corpus_parse_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();

    let out = run(&[
        "corpus",
        "--file",
        dir.path().join("missing.json").to_str().unwrap(),
        "--bound",
        "20",
    ]);
    assert_eq!(code_of(&out), 2);

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, "[{\"name\": \"x\"").unwrap();
    let out = run(&[
        "corpus",
        "--file",
        truncated.to_str().unwrap(),
        "--bound",
        "20",
    ]);
    assert_eq!(code_of(&out), 2);

    let not_monic = dir.path().join("notmonic.json");
    let mut file = std::fs::File::create(&not_monic).unwrap();
    writeln!(
        file,
        r#"[{{"name": "bad-pair", "a": [1, 2], "b": [0, 1]}}]"#
    )
    .unwrap();
    let out = run(&[
        "corpus",
        "--file",
        not_monic.to_str().unwrap(),
        "--bound",
        "20",
    ]);
    assert_eq!(code_of(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bad-pair"), "{stderr}");
}

#[test]
fn usage_errors_exit_with_one_and_help_with_zero() {
    assert_eq!(code_of(&run(&["no-such-command"])), 1);
    assert_eq!(code_of(&run(&["equiv", "--poly-a", "-2,0,1"])), 1);
    assert_eq!(code_of(&run(&["--help"])), 0);
    assert_eq!(code_of(&run(&["scan", "--help"])), 0);
}
