mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use sccadl::cli::{EXIT_FAILURE, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sccadl::cli::run(
        std::iter::once("sccadl").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn valid(name: &str) -> String {
    common::fixture_dir("valid")
        .join(name)
        .display()
        .to_string()
}

fn fire_inv() -> String {
    common::fixture_dir("invariants")
        .join("fire.inv")
        .display()
        .to_string()
}

fn all_fixture_paths(kind: &str) -> Vec<PathBuf> {
    common::fixtures(kind)
        .into_iter()
        .map(|(n, _)| common::fixture_dir(kind).join(n))
        .collect()
}

/// Valid, compact and with sorted keys: reprinting the parsed value gives
/// the same bytes.
fn assert_canonical(line: &str) -> Value {
    let v: Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{e}: {line}"));
    assert_eq!(serde_json::to_string(&v).unwrap(), line);
    v
}

#[test]
fn check_exit_codes_over_the_corpus() {
    for p in all_fixture_paths("valid") {
        let r = run(&["check", p.to_str().unwrap()]);
        assert_eq!(r.code, EXIT_OK, "{}: {}", p.display(), r.err);
        assert!(r.err.lines().all(|l| l.contains(" warning ")), "{}", r.err);
    }
    for p in all_fixture_paths("invalid") {
        assert_eq!(
            run(&["check", p.to_str().unwrap()]).code,
            EXIT_FAILURE,
            "{}",
            p.display()
        );
    }
}

#[test]
fn json_is_canonical_for_every_command() {
    let dir = tempfile::tempdir().unwrap();
    for p in all_fixture_paths("valid")
        .iter()
        .chain(&all_fixture_paths("invalid"))
    {
        let p = p.to_str().unwrap();
        for args in [
            vec!["--json", "check", p],
            vec!["--json", "analyze", p, "--dead"],
            vec!["--json", "graph", p],
            vec![
                "--json",
                "generate",
                p,
                "--out",
                dir.path().to_str().unwrap(),
            ],
        ] {
            let r = run(&args);
            let lines: Vec<&str> = r.out.lines().collect();
            assert_eq!(lines.len(), 1, "{args:?}: {}", r.out);
            let v = assert_canonical(lines[0]);
            if r.code == EXIT_FAILURE {
                assert_eq!(v["ok"], Value::Bool(false));
                assert!(!v["diagnostics"].as_array().unwrap().is_empty());
            }
        }
    }
    let r = run(&[
        "--json",
        "verify",
        &valid("fire.scc"),
        "--invariants",
        &fire_inv(),
    ]);
    let v = assert_canonical(r.out.trim_end());
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 15);
}

#[test]
fn check_json_lists_warnings() {
    let r = run(&["--json", "check", &valid("unused_source.scc")]);
    assert_eq!(r.code, EXIT_OK);
    let v = assert_canonical(r.out.trim_end());
    assert_eq!(v["ok"], Value::Bool(true));
    assert!(v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d["code"] == "W031"));
}

#[test]
fn analyze_queries() {
    let fire = valid("fire.scc");
    let r = run(&["analyze", &fire, "--impact", "SmokeDetector.smokeLevel"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        r.out,
        "Alarm.activate\nFireController\nFireRisk\nSmokePresence\n"
    );
    let r = run(&["analyze", &fire, "--must-impact", "smokeLevel"]);
    assert_eq!(r.out, "FireRisk\nSmokePresence\n");
    let r = run(&["--json", "analyze", &fire, "--activators", "Alarm.activate"]);
    assert_eq!(
        r.out,
        "[\"FireController\",\"FireRisk\",\"SmokeDetector.smokeLevel\",\"SmokePresence\"]\n"
    );
    let r = run(&["analyze", &fire, "--impact", "Nowhere"]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(
        r.err.starts_with("E001 error <command-line>:0:0 "),
        "{}",
        r.err
    );
}

#[test]
fn usage_errors() {
    let fire = valid("fire.scc");
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["analyze", &fire]).code, EXIT_USAGE);
    assert_eq!(
        run(&["analyze", &fire, "--dead", "--impact", "x"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["graph", &fire, "--format", "svg"]).code, EXIT_USAGE);
    assert_eq!(run(&["verify", &fire]).code, EXIT_USAGE);
    let r = run(&[
        "verify",
        &fire,
        "--invariants",
        &fire_inv(),
        "--state-limit",
        "0",
    ]);
    assert_eq!(r.code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn missing_files_are_io_errors() {
    let r = run(&["check", "/nonexistent/arch.scc"]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(
        r.err.starts_with("E040 error /nonexistent/arch.scc:0:0 "),
        "{}",
        r.err
    );
    let r = run(&[
        "verify",
        &valid("fire.scc"),
        "--invariants",
        "/nonexistent/x.inv",
    ]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.err.starts_with("E040 "));
}

#[test]
fn verify_exit_codes() {
    let fire = valid("fire.scc");
    let r = run(&["verify", &fire, "--invariants", &fire_inv()]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert_eq!(r.out.lines().filter(|l| l.starts_with("HOLDS ")).count(), 7);
    assert_eq!(
        r.out.lines().filter(|l| l.starts_with("VIOLATED ")).count(),
        8
    );

    let dir = tempfile::tempdir().unwrap();
    let holds = dir.path().join("holds.inv");
    std::fs::write(
        &holds,
        "never invoke(*, Alarm.stop)\npublish(FireRisk) leadsto activate(FireController)\n",
    )
    .unwrap();
    let r = run(&["verify", &fire, "--invariants", holds.to_str().unwrap()]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "HOLDS never invoke(*, Alarm.stop)\nHOLDS publish(FireRisk) leadsto activate(FireController)\n"));

    let r = run(&[
        "verify",
        &fire,
        "--invariants",
        &fire_inv(),
        "--state-limit",
        "2",
    ]);
    assert_eq!(r.code, EXIT_LIMIT);
    assert!(r.err.starts_with("E050 "), "{}", r.err);

    let bad = dir.path().join("bad.inv");
    std::fs::write(&bad, "never activate(Ghost)\n").unwrap();
    let r = run(&["verify", &fire, "--invariants", bad.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(
        r.err.contains(&format!("{}:1:", bad.display())),
        "{}",
        r.err
    );
}

#[test]
fn promela_is_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let pml = dir.path().join("fire.pml");
    run(&[
        "verify",
        &valid("fire.scc"),
        "--invariants",
        &fire_inv(),
        "--emit-promela",
        pml.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(pml).unwrap();
    assert_eq!(text.matches("\nltl inv").count(), 15);
}

#[test]
fn generate_writes_into_generated_dir() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&[
        "generate",
        &valid("fire.scc"),
        "--out",
        dir.path().to_str().unwrap(),
        "--descriptor",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.lines().count(), 8);
    assert!(dir.path().join("generated/framework.json").exists());

    // Signature drift against the descriptor of the previous architecture.
    let desc = dir.path().join("generated/framework.json");
    let drifted = common::fixture_dir("conformance").join("fire_risk_int.scc");
    let r = run(&[
        "check",
        drifted.to_str().unwrap(),
        "--baseline",
        desc.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(
        r.err.lines().any(|l| l.starts_with("W020 warning ")),
        "{}",
        r.err
    );
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sccadl"))
}

#[test]
fn binary_streams_and_env_limit() {
    let fire = valid("fire.scc");
    let out = binary().args(["graph", &fire]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph architecture {"));
    assert!(out.stderr.is_empty());

    let out = binary()
        .args(["verify", &fire, "--invariants", &fire_inv()])
        .env("SCCADL_STATE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_LIMIT));
    let out = binary()
        .args([
            "verify",
            &fire,
            "--invariants",
            &fire_inv(),
            "--state-limit",
            "100000",
        ])
        .env("SCCADL_STATE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(EXIT_FAILURE),
        "flag overrides the environment"
    );

    let out = binary().arg("check").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(out.stdout.is_empty());
}

#[test]
fn diagnostics_carry_the_file_name() {
    let path = common::fixture_dir("invalid").join("e005_duplicate_name.scc");
    let r = run(&["check", path.to_str().unwrap()]);
    for line in r.err.lines() {
        let mut parts = line.splitn(4, ' ');
        let (code, sev, loc) = (
            parts.next().unwrap(),
            parts.next().unwrap(),
            parts.next().unwrap(),
        );
        assert!(code.starts_with('E') || code.starts_with('W'));
        assert!(sev == "error" || sev == "warning");
        assert!(loc.starts_with(&path.display().to_string()), "{line}");
        assert!(Path::new(loc.rsplitn(3, ':').nth(2).unwrap()).exists());
    }
}
