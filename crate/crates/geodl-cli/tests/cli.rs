//! CLI integration tests: exit codes, output shapes, and the determinism
//! criterion — identical argv, seed and configuration must produce
//! byte-identical JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geodl"))
}

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../geodl/gallery-data")
        .join(name);
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn reason_consistent_reports_inconsistency_with_exit_zero() {
    let out = run(&["reason", "consistent", &data("ball_unsound.kb")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "INCONSISTENT");

    let out = run(&["reason", "consistent", &data("conv_exclusion.kb")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "CONSISTENT");
}

#[test]
fn check_model_on_the_shipped_witness() {
    let out = run(&[
        "check-model",
        "elem",
        &data("ball_unsound.kb"),
        &data("ball_unsound.emb"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "MODEL (exact)");
}

#[test]
fn matrix_check_passes_on_the_shipped_table() {
    let out = run(&["matrix-check", &data("table4.csv"), "--finite"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("OK: 0 violations"));
}

#[test]
fn matrix_check_flags_mutations_with_exit_one() {
    let base = std::fs::read_to_string(data("table4.csv")).unwrap();
    let mutated = base.replace(
        "completeness,yes,yes,no,no,no,no,no,no,no,",
        "completeness,no,yes,no,no,no,no,no,no,no,",
    );
    assert_ne!(base, mutated);
    let dir = std::env::temp_dir().join("geodl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mutated.csv");
    std::fs::write(&path, mutated).unwrap();
    let out = run(&["matrix-check", path.to_str().unwrap(), "--finite"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["reason", "consistent", "/nonexistent/file.kb"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-model", "nope", &data("ball_unsound.kb"), &data("ball_unsound.emb")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join("geodl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.kb");
    std::fs::write(&path, "SubClassOf(A").unwrap();
    let out = run(&["parse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 1"), "diagnostic names the position: {err}");
}

#[test]
fn resource_caps_exit_three() {
    // an absurdly small projection cap trips on the existential axiom
    let dir = std::env::temp_dir().join("geodl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let kb = dir.join("project.kb");
    std::fs::write(
        &kb,
        "Language: ELHI-bot-nf\nSubClassOf(Exists(r A) B)\nSubClassOf(Exists(r B) A)\n",
    )
    .unwrap();
    let emb = dir.join("project.emb");
    // role region with crossing constraints so elimination multiplies rows
    let mut constraints = Vec::new();
    for k in 1..=6i64 {
        for (s0, s1) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            constraints.push(format!(
                "{{\"coeffs\":[\"{}\",\"{}\"],\"rel\":\"<=\",\"bound\":\"6\"}}",
                s0 * k,
                s1 * (k + 7)
            ));
        }
    }
    std::fs::write(
        &emb,
        format!(
            "{{\"method\":\"conv\",\"dim\":1,\"concepts\":{{\"A\":{{\"dim\":1,\"constraints\":[]}},\"B\":{{\"dim\":1,\"constraints\":[]}}}},\"roles\":{{\"r\":{{\"dim\":2,\"constraints\":[{}]}}}}}}",
            constraints.join(",")
        ),
    )
    .unwrap();
    let out = bin()
        .args(["--fm-row-cap", "3", "check-model", "conv", kb.to_str().unwrap(), emb.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

/// Criterion 8: identical argv + seed produce byte-identical JSON output,
/// including for subcommands that use randomized probes.
#[test]
fn criterion_8_deterministic_json() {
    let invocations: Vec<Vec<String>> = vec![
        vec![
            "--json".into(),
            "--seed".into(),
            "7".into(),
            "gallery".into(),
            "run".into(),
            "boxe-abox-separation".into(),
        ],
        vec![
            "--json".into(),
            "--seed".into(),
            "7".into(),
            "gallery".into(),
            "run".into(),
            "ball-empty-unsound".into(),
        ],
        vec!["--json".into(), "matrix-check".into(), data("table4.csv"), "--finite".into()],
        vec![
            "--json".into(),
            "--seed".into(),
            "11".into(),
            "probe".into(),
            "synth".into(),
            "elbe".into(),
            data("ball_top_bottom.kb"),
        ],
        vec![
            "--json".into(),
            "check-model".into(),
            "box2el".into(),
            data("box2el_unsound.kb"),
            data("box2el_unsound.emb"),
        ],
    ];
    for args in invocations {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&argv);
        let second = run(&argv);
        assert_eq!(
            first.stdout, second.stdout,
            "non-deterministic output for {argv:?}"
        );
        assert_eq!(first.status.code(), second.status.code());
        println!("criterion 8: PASS — byte-identical output for {argv:?}");
    }
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join("geodl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "seed=5
search_budget=9000 # small
").unwrap();
    let args = [
        "--json",
        "--config",
        cfg.to_str().unwrap(),
        "gallery",
        "run",
        "boxe-abox-separation",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // unknown keys are usage errors
    std::fs::write(&cfg, "nope=1
").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "gallery", "list"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gallery_run_all_passes() {
    let out = run(&["gallery", "run"]);
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("33/33 cases pass"));
}

#[test]
fn audit_subcommands_report_violations_with_exit_one() {
    let out = run(&[
        "audit",
        "soundness",
        "elem",
        &data("ball_unsound.kb"),
        &data("ball_unsound.emb"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("refuted"));

    let out = run(&[
        "audit",
        "entailed",
        "box2el",
        &data("box2el_entailed.kb"),
        &data("box2el_unsound.emb"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
