use std::path::PathBuf;
use std::process::{Command, Output};

use pureset::cli::{Report, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/problems").join(name)
}

fn pureset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pureset")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = problem(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    pureset(&args)
}

fn json_report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn every_sample_problem_parses() {
    let cases = [
        ("feasible", "usd.json", EXIT_OK),
        ("feasible", "transform.json", EXIT_OK),
        ("verify-pi", "transform.json", EXIT_OK),
        ("kraus", "transform.json", EXIT_OK),
        ("det", "deterministic.json", EXIT_OK),
        ("det", "deterministic_infeasible.json", EXIT_NEGATIVE),
        ("verify-pi", "deterministic_infeasible.json", EXIT_NEGATIVE),
        ("simulate", "channel_reset.json", EXIT_OK),
        ("unital", "channel_bitflip.json", EXIT_OK),
        ("unital", "channel_reset.json", EXIT_NEGATIVE),
        ("transfer", "channel_bitflip.json", EXIT_OK),
        ("majorize", "majorize.json", EXIT_OK),
        ("theorem3", "theorem3.json", EXIT_OK),
        ("monotones", "monotones.json", EXIT_OK),
    ];
    for (cmd, file, code) in cases {
        let out = run_on(cmd, file, &["--json"]);
        assert_eq!(out.status.code(), Some(code), "{cmd} {file}: {}", stderr(&out));
        let r = json_report(&out);
        assert_eq!(r.exit_code, code);
        assert_eq!(r.command, cmd);
    }
}

#[test]
fn max_uniform_prints_only_the_number() {
    let out = run_on("usd", "usd.json", &["--max-uniform"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&out), "0.5\n");
}

#[test]
fn infeasible_certificate_names_the_failing_condition() {
    let r = json_report(&run_on("verify-pi", "deterministic_infeasible.json", &["--json"]));
    assert_eq!(r.verdict, "infeasible");
    assert_eq!(r.result["first_failure"], "(1.a) positivity");
    let w = r.result["certificate"]["positivity"]["witness"].as_f64().unwrap();
    assert!((w + 0.8).abs() < 1e-12);
}

#[test]
fn deterministic_certificate_is_the_overlap_ratio() {
    let r = json_report(&run_on("det", "deterministic.json", &["--json"]));
    let off = &r.result["certificate"]["pi"][0][1];
    assert!((off[0].as_f64().unwrap() - 0.5 / 0.9).abs() < 1e-12);
    assert_eq!(off[1].as_f64().unwrap(), 0.0);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for (cmd, file) in [("feasible", "transform.json"), ("kraus", "transform.json"), ("theorem3", "theorem3.json")] {
        let a = run_on(cmd, file, &["--json"]);
        let b = run_on(cmd, file, &["--json"]);
        assert_eq!(a.stdout, b.stdout, "{cmd} {file}");
    }
}

#[test]
fn reports_round_trip_through_serde() {
    let out = run_on("kraus", "transform.json", &["--json"]);
    let r = json_report(&out);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, stdout(&out));
    assert!(r.elapsed_ms.is_none());
}

#[test]
fn timing_is_opt_in() {
    let r = json_report(&run_on("majorize", "majorize.json", &["--json", "--timing"]));
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn search_runs_when_no_certificate_is_given() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(problem("transform.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("pi");
    let path = write_temp(&dir, "nopi.json", &v.to_string());
    let out = pureset(&["feasible", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let r = json_report(&out);
    assert_eq!(r.result["certificate"]["feasible"], true);
    assert_ne!(r.result["method"], "supplied");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("report.json");
    let out = run_on("majorize", "majorize.json", &["--json", "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(out.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(dest).unwrap()).unwrap();
    assert_eq!(r.verdict, "holds");
}

#[test]
fn malformed_json_reports_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.json", "{\"version\":1, \"kind\": \"usd\", \"states\": [[[1,0]]\n");
    let out = pureset(&["feasible", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let msg = stderr(&out);
    assert!(msg.contains("line 2"), "{msg}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let wrong_version = write_temp(&dir, "v.json", r#"{"version":7,"kind":"majorize","lambda":[1],"sigma":[1]}"#);
    let unnormalized = write_temp(&dir, "n.json", r#"{"version":1,"kind":"usd","states":[[[2,0],[0,0]]]}"#);
    let missing = dir.path().join("absent.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["majorize".into(), wrong_version.display().to_string()],
        vec!["usd".into(), unnormalized.display().to_string()],
        vec!["feasible".into(), missing.display().to_string()],
        vec!["unital".into(), problem("majorize.json").display().to_string()],
        vec!["no-such-command".into()],
        vec!["selftest".into(), "--trials".into(), "0".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = pureset(&refs);
        assert_eq!(out.status.code(), Some(EXIT_INPUT), "{args:?}: {}", stderr(&out));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn selftest_is_reproducible_and_replayable() {
    let a = pureset(&["selftest", "--trials", "3", "--seed", "17", "--json"]);
    let b = pureset(&["selftest", "--trials", "3", "--seed", "17", "--json"]);
    assert_eq!(a.status.code(), Some(EXIT_OK), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let replay = |seed: &str| pureset(&["selftest", "--replay", "majorize/prefix_oracle", "--seed", seed, "--json"]);
    let (x, y) = (replay("99"), replay("99"));
    assert_eq!(x.status.code(), Some(EXIT_OK), "{}", stderr(&x));
    assert_eq!(x.stdout, y.stdout);

    let unknown = pureset(&["selftest", "--replay", "nothing/here", "--seed", "1"]);
    assert_eq!(unknown.status.code(), Some(EXIT_INPUT));
}

#[test]
fn text_output_is_aligned() {
    let text = stdout(&run_on("unital", "channel_reset.json", &[]));
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("command"));
    let column = |l: &str| l.find(char::is_whitespace).map(|i| i + l[i..].find(|c: char| !c.is_whitespace()).unwrap());
    let first = column(lines[0]);
    assert!(lines.iter().all(|l| column(l) == first), "{text}");
    assert!(text.contains("verdict") && text.contains("violated"));
}
