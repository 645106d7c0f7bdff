use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn curvedkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvedkit"))
        .args(args)
        .env_remove("CURVEDKIT_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_exit_codes() {
    let empty = curvedkit(&["verify", fixture("empty_suite.json").to_str().unwrap()]);
    assert_eq!(code(&empty), 0);
    let report: serde_json::Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert_eq!(report["entries"].as_array().unwrap().len(), 0);

    let wrong = curvedkit(&["verify", fixture("wrong_expectation.json").to_str().unwrap()]);
    assert_eq!(code(&wrong), 1);

    let bad = curvedkit(&["verify", fixture("bad_suite.json").to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    let msg = String::from_utf8_lossy(&bad.stderr);
    assert!(msg.contains("thm_seven") && msg.contains("line 4"), "{msg}");

    let missing = curvedkit(&["verify", "/nonexistent/suite.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = curvedkit(&[
        "verify",
        fixture("small_suite.json").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        golden("small_suite.report.json")
    );
}

#[test]
fn seed_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_curvedkit"))
        .args(["verify", fixture("small_suite.json").to_str().unwrap()])
        .env("CURVEDKIT_SEED", "77")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for e in report["entries"].as_array().unwrap() {
        assert_eq!(e["seed"], 77);
    }
    let bad = Command::new(env!("CARGO_BIN_EXE_curvedkit"))
        .args(["verify", fixture("small_suite.json").to_str().unwrap()])
        .env("CURVEDKIT_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn renders_match_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("h2_balls", "poincare"),
        ("h2_balls", "klein"),
        ("h2_chords", "poincare"),
        ("h2_chords", "klein"),
        ("h2_hyperdomains", "poincare"),
        ("h2_hyperdomains", "klein"),
        ("h2_paraballs", "poincare"),
        ("h2_paraballs", "klein"),
    ];
    for (name, model) in cases {
        let out = dir.path().join(format!("{name}.{model}.svg"));
        let run = curvedkit(&[
            "render",
            fixture(&format!("{name}.json")).to_str().unwrap(),
            "--model",
            model,
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
        assert_eq!(
            std::fs::read_to_string(&out).unwrap(),
            golden(&format!("{name}.{model}.svg")),
            "{name} in {model}"
        );
    }
    for name in ["r2_strip_disk", "s2_caps"] {
        let out = dir.path().join(format!("{name}.svg"));
        let run = curvedkit(&[
            "render",
            fixture(&format!("{name}.json")).to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&run), 0);
        assert_eq!(std::fs::read_to_string(&out).unwrap(), golden(&format!("{name}.svg")));
    }
}

#[test]
fn render_rejects_wrong_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let run = curvedkit(&[
        "render",
        fixture("s2_caps.json").to_str().unwrap(),
        "--model",
        "klein",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 2);
    assert!(!out.exists());
}

#[test]
fn formula_rcl() {
    let out = curvedkit(&["formula", "rcl", "1.0", "0.5", "0.2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exists"], true);
    let bc = v["sinh2_bc"].as_f64().unwrap();
    assert!((bc - 0.2f64.sinh().powi(2)).abs() < 1e-10);

    let flipped = curvedkit(&["formula", "rcl", "1.0", "-0.5", "-0.2"]);
    let w: serde_json::Value = serde_json::from_slice(&flipped.stdout).unwrap();
    let sum = v["omega"].as_f64().unwrap() + w["omega"].as_f64().unwrap();
    assert!((sum - std::f64::consts::PI).abs() < 1e-12);

    let none = curvedkit(&["formula", "rcl", "1", "3", "0.5"]);
    let v: serde_json::Value = serde_json::from_slice(&none.stdout).unwrap();
    assert_eq!(v["exists"], false);

    assert_eq!(code(&curvedkit(&["formula", "rcl", "0", "0", "0"])), 2);
}

#[test]
fn scenario_subcommand() {
    let out = curvedkit(&["scenario", "thm6c", "--n", "30", "--seed", "4", "--param", "r=0.3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["stats"]["seed"], 4);

    let fail = curvedkit(&["scenario", "thm6d", "--n", "30", "--expected", "central_always"]);
    assert_eq!(code(&fail), 1);
    assert_eq!(code(&curvedkit(&["scenario", "thm6c", "--param", "zz=1"])), 2);
    assert_eq!(code(&curvedkit(&["scenario", "thm99"])), 2);
}
