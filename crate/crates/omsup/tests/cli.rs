//! End-to-end tests of the `omsup` binary: real process spawns, real
//! files, asserted exit codes. The contract: 0 answers yes, 2 answers no,
//! 1 means the question could not be answered; unsolvable instances still
//! write their report, and repeated runs are byte-identical.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn omsup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omsup"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("the binary spawns")
}

fn run_synth(out_dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "synth".to_string(),
        "--plant".into(),
        fixture("robot-plant.aut").display().to_string(),
        "--safety".into(),
        fixture("robot-safety.aut").display().to_string(),
        "--max-legal".into(),
        fixture("robot-liveness.aut").display().to_string(),
        "--min-accept".into(),
        fixture("robot-min-accept.aut").display().to_string(),
        "--out-dir".into(),
        out_dir.display().to_string(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    omsup(&args)
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the binary exits normally")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn solvable_synthesis_writes_all_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_synth(dir.path(), &[]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("stabilized after 2 round(s)"), "stdout: {text}");
    assert!(text.contains("solvable: supervisor with 6 states"), "stdout: {text}");
    assert!(text.contains("disabled: `c2`"), "stdout: {text}");
    for name in ["supervisor.aut", "report.json", "supervisor.dot"] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["solvable"], serde_json::Value::Bool(true));
    assert_eq!(report["n_final"], serde_json::json!(2));
    assert_eq!(report["disabled_events"].as_array().unwrap().len(), 4);

    let verify = omsup(&["verify", &dir.path().join("supervisor.aut").display().to_string()]);
    assert_eq!(exit_code(&verify), 0);
    assert_eq!(
        stdout(&verify),
        "nonblocking: ok\ndeadlock-free: ok\nlivelock-free: ok\n"
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let out_first = run_synth(first.path(), &[]);
    let out_second = run_synth(second.path(), &[]);
    // Artifacts match across directories; stdout only differs in the
    // directory it names.
    for name in ["supervisor.aut", "report.json", "supervisor.dot"] {
        assert_eq!(
            std::fs::read(first.path().join(name)).unwrap(),
            std::fs::read(second.path().join(name)).unwrap(),
            "{name} differs between runs"
        );
    }
    assert_eq!(
        stdout(&out_first).replace(&first.path().display().to_string(), "<out>"),
        stdout(&out_second).replace(&second.path().display().to_string(), "<out>"),
    );
    // Rerunning into the same directory reproduces identical bytes too.
    let out_again = run_synth(first.path(), &[]);
    assert_eq!(stdout(&out_first), stdout(&out_again));
}

#[test]
fn liveness_only_mode_reports_its_own_failure_but_still_writes_the_supervisor() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_synth(dir.path(), &["--no-markability"]);
    assert_eq!(exit_code(&output), 2);
    let text = stdout(&output);
    assert!(text.contains("unsolvable"), "stdout: {text}");
    assert!(dir.path().join("supervisor.aut").exists());

    let verify = omsup(&["verify", &dir.path().join("supervisor.aut").display().to_string()]);
    assert_eq!(exit_code(&verify), 2);
    let text = stdout(&verify);
    assert!(text.contains("nonblocking: FAIL — `c1` cannot be completed"), "{text}");
    assert!(text.contains("deadlock-free: ok"), "{text}");
    assert!(
        text.contains("livelock-free: FAIL — `c1 (u1 c3)^ω` starves the markers"),
        "{text}"
    );
}

#[test]
fn an_unsolvable_instance_writes_the_report_but_no_supervisor() {
    let dir = tempfile::tempdir().unwrap();
    let output = omsup(&[
        "synth",
        "--plant",
        &fixture("unsolvable-plant.aut").display().to_string(),
        "--safety",
        &fixture("unsolvable-safety.aut").display().to_string(),
        "--max-legal",
        &fixture("unsolvable-liveness.aut").display().to_string(),
        "--out-dir",
        &dir.path().display().to_string(),
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stdout(&output).contains("no marked string survives the bounds"));
    assert!(dir.path().join("report.json").exists());
    assert!(!dir.path().join("supervisor.aut").exists());
    assert!(!dir.path().join("supervisor.dot").exists());
}

#[test]
fn property_checks_answer_with_exit_codes() {
    let plant = fixture("robot-plant.aut").display().to_string();
    let liveness = fixture("robot-liveness.aut").display().to_string();

    let holds = omsup(&["check", "nonblocking", &plant]);
    assert_eq!(exit_code(&holds), 0);
    assert_eq!(stdout(&holds), "nonblocking: holds\n");

    let fails = omsup(&["check", "markable", &liveness, "--plant", &plant]);
    assert_eq!(exit_code(&fails), 2);
    assert!(stdout(&fails).contains("markable: fails — `c1 (u1 c3)^ω`"));

    let usage = omsup(&["check", "markable", &liveness]);
    assert_eq!(exit_code(&usage), 1);
    assert!(stderr(&usage).contains("needs --plant"));
}

#[test]
fn operators_compose_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let closed = dir.path().join("closed.aut");
    let safety = fixture("robot-safety.aut").display().to_string();

    // Prefix closure of a finite-view document, then its limit.
    let pre = omsup(&["pre", &safety, "--out", &closed.display().to_string()]);
    assert_eq!(exit_code(&pre), 0, "stderr: {}", stderr(&pre));
    let lim = omsup(&["lim", &closed.display().to_string()]);
    assert_eq!(exit_code(&lim), 0, "stderr: {}", stderr(&lim));
    assert!(stdout(&lim).contains("role omega"));
    assert!(stdout(&lim).contains("buchi all"));

    let clo = omsup(&["clo", &fixture("robot-min-accept.aut").display().to_string()]);
    assert_eq!(exit_code(&clo), 0);
    assert!(stdout(&clo).contains("role omega"));

    let intersect = omsup(&[
        "intersect",
        &fixture("robot-plant.aut").display().to_string(),
        &fixture("robot-liveness.aut").display().to_string(),
        "--view",
        "omega",
    ]);
    assert_eq!(exit_code(&intersect), 0);
    assert!(stdout(&intersect).contains("states 5"), "{}", stdout(&intersect));
}

#[test]
fn containment_answers_and_replays_counterexamples() {
    let min_accept = fixture("robot-min-accept.aut").display().to_string();
    let liveness = fixture("robot-liveness.aut").display().to_string();

    let holds = omsup(&["contains", &min_accept, &liveness]);
    assert_eq!(exit_code(&holds), 0);
    assert_eq!(stdout(&holds), "containment holds\n");

    let fails = omsup(&["contains", &liveness, &min_accept]);
    assert_eq!(exit_code(&fails), 2);
    assert!(stdout(&fails).contains("containment fails"));
    assert!(stdout(&fails).contains("`c1 (u1 c3)^ω`"), "{}", stdout(&fails));
}

#[test]
fn export_dot_draws_the_disablement_ledger_from_the_report() {
    let dir = tempfile::tempdir().unwrap();
    run_synth(dir.path(), &[]);
    let output = omsup(&[
        "export-dot",
        &dir.path().join("supervisor.aut").display().to_string(),
        "--report",
        &dir.path().join("report.json").display().to_string(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("__disabled_0"), "{text}");
    assert!(text.contains("arrowhead=tee"), "{text}");
    // Matches the artifact the pipeline wrote itself.
    assert_eq!(
        text,
        std::fs::read_to_string(dir.path().join("supervisor.dot")).unwrap()
    );
}

#[test]
fn malformed_and_mismatched_inputs_exit_one_without_panicking() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.aut");
    std::fs::write(&bad, "states x\n").unwrap();
    let parse = omsup(&["verify", &bad.display().to_string()]);
    assert_eq!(exit_code(&parse), 1);
    assert!(stderr(&parse).contains("line 1"), "{}", stderr(&parse));

    let missing = omsup(&["verify", "/nonexistent/machine.aut"]);
    assert_eq!(exit_code(&missing), 1);

    let mismatch = omsup(&[
        "contains",
        &fixture("robot-plant.aut").display().to_string(),
        &fixture("unsolvable-plant.aut").display().to_string(),
    ]);
    assert_eq!(exit_code(&mismatch), 1);
    assert!(stderr(&mismatch).contains("different alphabets"));

    for junk in ["trans 0", "states 1\ninitial 5", "controllable a\ncontrollable b"] {
        std::fs::write(&bad, junk).unwrap();
        let output = omsup(&["verify", &bad.display().to_string()]);
        assert_eq!(exit_code(&output), 1, "input {junk:?}");
        assert!(stderr(&output).starts_with("omsup: error:"), "input {junk:?}");
    }
}

#[test]
fn oracle_sweeps_are_deterministic_in_the_seed() {
    let first = omsup(&["oracle", "sweep", "--instances", "6", "--seed", "3"]);
    let second = omsup(&["--seed", "3", "oracle", "sweep", "--instances", "6"]);
    assert_eq!(exit_code(&first), 0, "stdout: {}", stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("zero mismatches"));

    let fixture_run = omsup(&["oracle", "fixture"]);
    assert_eq!(exit_code(&fixture_run), 0, "stdout: {}", stdout(&fixture_run));
}
