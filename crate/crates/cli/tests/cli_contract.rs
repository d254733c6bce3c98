//! Contract tests for the kerndet binary: determinism, exit codes, file
//! validation, golden-kernel mutation detection.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kerndet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn gen_file(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = run(&args);
    assert_eq!(code(&out), 0, "gen failed: {}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_file(dir.path(), "a.json", &["--mode", "general", "--n", "2", "--seed", "9"]);
    let b = gen_file(dir.path(), "b.json", &["--mode", "general", "--n", "2", "--seed", "9"]);
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "identical arguments must produce byte-identical files"
    );
    let c = gen_file(dir.path(), "c.json", &["--mode", "general", "--n", "2", "--seed", "10"]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn round_trip_verifies_clean() {
    let dir = tempfile::tempdir().unwrap();
    for (mode, n, field) in [
        ("general", "0", "rational"),
        ("general", "3", "rational"),
        ("symmetric", "2", "rational"),
        ("general", "2", "prime:1000003"),
        ("symmetric", "1", "prime:1000003"),
    ] {
        let path = gen_file(
            dir.path(),
            &format!("{mode}-{n}.json"),
            &["--mode", mode, "--n", n, "--seed", "4", "--field", field],
        );
        let out = run(&["verify", path.to_str().unwrap(), "--primes", "2"]);
        assert_eq!(
            code(&out),
            0,
            "verify failed for {mode} n={n} {field}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn json_round_trip_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "rt.json", &["--mode", "general", "--n", "2", "--seed", "3"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: kerndet_cli::instance::InstanceFile = serde_json::from_str(&text).unwrap();
    kerndet_cli::instance::validate(&parsed).expect("valid instance");
    assert_eq!(text, kerndet_cli::instance::to_json(&parsed));
}

#[test]
fn corrupted_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 2);

    let missing = dir.path().join("nope.json");
    assert_eq!(code(&run(&["verify", missing.to_str().unwrap()])), 2);
}

#[test]
fn invariant_violation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "dup.json", &["--mode", "general", "--n", "1", "--seed", "5"]);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // Duplicate the first l into the second right triplet.
    let first_l = v["right"][0][2].clone();
    v["right"][1][2] = first_l;
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid"));
}

#[test]
fn mutated_kernel_entry_exits_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "mut.json", &["--mode", "general", "--n", "2", "--seed", "6"]);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let old = v["kernel"][1][1].as_str().unwrap().to_string();
    v["kernel"][1][1] = serde_json::Value::String(format!("{old}1"));
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("file.kernel_golden"), "{text}");
    assert!(text.contains("stored"), "witness missing: {text}");
    assert!(text.contains("recomputed"), "witness missing: {text}");
}

#[test]
fn det_prints_rational_form() {
    // The worked two-pair system: D_2 = -2.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s1.json");
    let file = serde_json::json!({
        "schema": "1",
        "mode": "general",
        "n": 1,
        "field": "rational",
        "left": [["1", "1", "0"], ["1", "3", "2"]],
        "right": [["1", "2", "1"], ["1", "1", "3"]]
    });
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = run(&["det", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-2");

    // Kernel determinants are rational in general.
    let g = gen_file(dir.path(), "g.json", &["--mode", "general", "--n", "2", "--seed", "8"]);
    let out = run(&["det", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let printed = String::from_utf8_lossy(&out.stdout).trim().to_string();
    assert!(printed.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/'));
}

#[test]
fn s1_full_suite_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s1.json");
    let file = serde_json::json!({
        "schema": "1",
        "mode": "general",
        "n": 1,
        "field": "rational",
        "left": [["1", "1", "0"], ["1", "3", "2"]],
        "right": [["1", "2", "1"], ["1", "1", "3"]],
        "kernel": [["1", "0"], ["1", "-2"]]
    });
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--suite", "all"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn s2_symmetric_suite_exits_0() {
    // The worked symmetric example: triplets (1,1,1), (1,3,2).
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s2.json");
    let file = serde_json::json!({
        "schema": "1",
        "mode": "symmetric",
        "n": 1,
        "field": "rational",
        "triplets": [["1", "1", "1"], ["1", "3", "2"]]
    });
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--suite", "symmetric"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    // D_2 = -5/18 for this system.
    let out = run(&["det", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-5/18");
}

#[test]
fn generation_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let out = run(&[
        "gen", "--mode", "general", "--n", "2", "--seed", "3", "--range", "1",
        "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("attempts"));
}

#[test]
fn symmetric_suite_needs_symmetric_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "g.json", &["--mode", "general", "--n", "1", "--seed", "2"]);
    let out = run(&["verify", path.to_str().unwrap(), "--suite", "symmetric"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn batch_trials_exit_0() {
    let out = run(&[
        "verify", "--trials", "5", "--mode", "general", "--n", "2", "--seed", "11",
        "--primes", "1",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("5 trials"), "{text}");

    let out = run(&[
        "verify", "--trials", "3", "--mode", "symmetric", "--n", "2", "--seed", "12",
        "--suite", "symmetric", "--primes", "0",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn json_report_is_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "j.json", &["--mode", "general", "--n", "1", "--seed", "7"]);
    let out = run(&["verify", path.to_str().unwrap(), "--json", "--primes", "1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(v["aggregate"], "pass");
    assert!(v["records"].as_array().unwrap().len() > 5);
}

#[test]
fn verify_verdicts_stable_across_prime_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_file(dir.path(), "p.json", &["--mode", "general", "--n", "2", "--seed", "13"]);
    for seed in ["1", "99", "123456"] {
        let out = run(&["verify", path.to_str().unwrap(), "--prime-seed", seed]);
        assert_eq!(code(&out), 0, "prime seed {seed} changed the verdict");
    }
}

#[test]
fn bench_emits_all_engine_columns() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bench.json");
    let out = run(&[
        "bench", "--sizes", "3,4", "--reps", "2", "--seed", "5",
        "-o", json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for col in ["exact", "multimod", "mod_p", "bordering"] {
        assert!(text.contains(col), "missing column {col}: {text}");
    }
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}
