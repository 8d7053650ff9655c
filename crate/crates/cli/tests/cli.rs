use std::process::{Command, Output};

use igusa_core::{WeightedTree, ZetaFunction};

fn igusa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igusa"))
        .args(args)
        .env_remove("IGUSA_BRUTE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn zeta_of_linear_polynomial() {
    let out = igusa(&["zeta", "--poly", "x", "--prime", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("Z = 4/(5 - t), t = 5^(-s)"));
}

#[test]
fn zeta_json_round_trips() {
    let out = igusa(&["zeta", "--poly", "(x-1)^2*(x-4)", "--prime", "3", "--format", "json"]);
    assert!(out.status.success());
    let z = ZetaFunction::from_json(&stdout(&out)).unwrap();
    assert_eq!(z.terms().len(), 5);
}

#[test]
fn counts_by_every_method() {
    let out = igusa(&[
        "count", "--poly", "(x-1)^2*(x-4)", "--prime", "3", "--max-m", "5", "--method", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let expected = ["1", "1", "3", "9", "18", "36"];
    for (m, n) in expected.iter().enumerate() {
        let line = format!("N_{m} = {n}  {n}  {n}");
        assert!(text.contains(&line), "{line} missing from\n{text}");
    }

    let out = igusa(&["count", "--poly", "x^2 - 1", "--prime", "2", "--max-m", "3"]);
    assert_eq!(stdout(&out), "N_0 = 1\nN_1 = 1\nN_2 = 2\nN_3 = 4\n");
}

#[test]
fn count_json_uses_strings() {
    let out = igusa(&[
        "count", "--poly", "(x-1)^2*(x-4)", "--prime", "3", "--max-m", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], "3");
    assert_eq!(v["counts"][5], "36");
    assert_eq!(v["coeffs"][0], "2/3");
}

#[test]
fn brute_cap_comes_from_flag_or_environment() {
    let args = ["count", "--poly", "x", "--prime", "3", "--max-m", "4", "--method", "brute"];
    assert!(igusa(&args).status.success());

    let mut capped = args.to_vec();
    capped.extend(["--brute-cap", "80"]);
    assert_eq!(igusa(&capped).status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_igusa"))
        .args(args)
        .env("IGUSA_BRUTE_CAP", "80")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn verify_passes_on_valid_input() {
    let out = igusa(&["verify", "--poly", "x^2 - 1", "--prime", "2", "--max-m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
    assert!(text.contains("PASS brute force matches"));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["zeta", "--poly", "x^2 + 1", "--prime", "5"],
        vec!["zeta", "--poly", "x^2 + + 1", "--prime", "5"],
        vec!["zeta", "--poly", "x", "--prime", "6"],
        vec!["keystream", "--poly", "(x - 1/2)", "--prime", "3", "--length", "3"],
        vec!["zeta", "--poly", "x"],
    ] {
        let out = igusa(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = igusa(&["zeta", "--poly", "x^2 + + 1", "--prime", "5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 6"));
}

#[test]
fn keystream_output() {
    let out = igusa(&["keystream", "--poly", "(x-1)^2*(x-4)", "--prime", "3", "--length", "5"]);
    assert_eq!(stdout(&out), "1\n1\n3\n9\n18\n36\n");
    let out = igusa(&[
        "keystream", "--poly", "x^2 - 1", "--prime", "2", "--length", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["values"], serde_json::json!(["1", "1", "2", "4"]));
}

#[test]
fn tree_dumps() {
    let args = ["tree", "--poly", "(x-1)^2*(x-4)", "--prime", "3"];
    let mut json = args.to_vec();
    json.extend(["--format", "json"]);
    let t = WeightedTree::from_json(&stdout(&igusa(&json))).unwrap();
    assert_eq!(t.lf(), 2);
    assert_eq!(t.vertices().len(), 6);

    let mut dot = args.to_vec();
    dot.extend(["--format", "dot"]);
    let text = stdout(&igusa(&dot));
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 5);
}

#[test]
fn lfsr_simulation() {
    let out = igusa(&["lfsr", "--prime", "2", "--taps", "1,1", "--init", "0,1", "--steps", "8", "--period"]);
    assert_eq!(stdout(&out), "0,1,1,0,1,1,0,1\npreperiod = 0\nperiod = 3\n");
    let out = igusa(&["lfsr", "--prime", "2", "--taps", "1,0,0,1", "--init", "1,0,0,0", "--period"]);
    assert!(stdout(&out).ends_with("period = 15\n"));
    let out = igusa(&["lfsr", "--prime", "2", "--taps", "1,1", "--init", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn poincare_series() {
    let out = igusa(&["poincare", "--poly", "x", "--prime", "5"]);
    assert_eq!(stdout(&out), "H = 5/(5 - t), t = 5^(-s)\n");
}
