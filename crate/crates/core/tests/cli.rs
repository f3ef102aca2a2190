use std::process::{Command, Output};

fn astheno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_astheno"))
        .args(args)
        .env_remove("ASTHENO_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sasakian_threefold_with_cosymplectic_vanishes() {
    let o = astheno(&[
        "check",
        "--m1",
        "1",
        "--m2",
        "2",
        "--factor1",
        "sasakian",
        "--factor2",
        "cosymplectic",
        "--condition",
        "astheno",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict:    identically-zero"));
}

#[test]
fn kenmotsu_pair_is_nonzero() {
    let o = astheno(&[
        "check",
        "--m1",
        "2",
        "--m2",
        "2",
        "--factor1",
        "kenmotsu",
        "--factor2",
        "kenmotsu",
        "--condition",
        "astheno",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict:    nonzero"));
}

#[test]
fn degenerate_geometry_is_a_usage_error() {
    let o = astheno(&[
        "check",
        "--m1",
        "0",
        "--m2",
        "1",
        "--factor1",
        "sasakian",
        "--factor2",
        "sasakian",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("error:"));
}

#[test]
fn check_with_values_and_json() {
    let o = astheno(&[
        "--format",
        "json",
        "check",
        "--m1",
        "1",
        "--m2",
        "1",
        "--factor1",
        "kenmotsu",
        "--factor2",
        "cosymplectic",
        "--b1",
        "-3/2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "nonzero");
    assert_eq!(v["factor1"], "beta-kenmotsu(-3/2)");
    astheno::expr_io::from_record(&v["residual"]).unwrap();
}

#[test]
fn values_must_fit_the_factor() {
    let o = astheno(&[
        "check",
        "--m1",
        "1",
        "--m2",
        "1",
        "--factor1",
        "sasakian",
        "--factor2",
        "cosymplectic",
        "--a2",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = astheno(&[
        "check",
        "--m1",
        "1",
        "--m2",
        "1",
        "--factor1",
        "sasakian",
        "--factor2",
        "cosymplectic",
        "--a1",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn skt_condition_on_cosymplectic_pair() {
    let o = astheno(&[
        "check",
        "--m1",
        "2",
        "--m2",
        "3",
        "--factor1",
        "cosymplectic",
        "--factor2",
        "cosymplectic",
        "--condition",
        "skt",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eval_examples() {
    let o = astheno(&["eval", "--expr", "eta1", "--apply", "d"]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "a1*Phi1\n")
    );

    let o = astheno(&["eval", "--expr", "eta1/\\eta1"]);
    assert_eq!(stdout(&o), "0\n");

    let o = astheno(&[
        "eval",
        "--expr",
        "Phi1 + Phi2 - 2*eta1/\\eta2",
        "--apply",
        "d",
        "--convention",
        "ungraded",
    ]);
    let expected = &astheno::fixtures::identities().get("d_omega").form;
    let got = astheno::expr_io::parse(stdout(&o).trim()).unwrap();
    assert_eq!(&got, expected);
}

#[test]
fn eval_chains_and_formats() {
    let o = astheno(&["eval", "--expr", "eta1", "--apply", "d", "--apply", "j"]);
    assert_eq!(stdout(&o), "a1*Phi1\n");
    let o = astheno(&["eval", "--expr", "eta1", "--apply", "j,j"]);
    assert_eq!(stdout(&o), "-eta1\n");
    let o = astheno(&["--format", "latex", "eval", "--expr", "1/2*b2*eta2/\\Phi2"]);
    assert_eq!(stdout(&o), "\\frac{1}{2}\\beta_2\\,\\eta_2\\wedge\\Phi_2\n");
    let o = astheno(&["eval", "--expr", "Phi1^2", "--m1", "1", "--m2", "1"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn eval_parse_error_reports_position() {
    let o = astheno(&["eval", "--expr", "eta1 + Phi3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:8"), "{}", stderr(&o));
}

#[test]
fn table_examples() {
    let o = astheno(&["table", "--id", "10"]);
    let text = stdout(&o);
    for row in ["row 7", "row 9"] {
        let line = text.lines().find(|l| l.contains(row)).unwrap();
        assert!(line.contains("engine zero"), "{line}");
    }
    assert!(matches!(o.status.code(), Some(0 | 1)));

    let o = astheno(&[
        "table",
        "--id",
        "1",
        "--convention",
        "ungraded",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    let passes = v["summary"]["discrepancy"] == 0;
    assert_eq!(o.status.code(), Some(if passes { 0 } else { 1 }));

    assert_eq!(astheno(&["table", "--id", "11"]).status.code(), Some(2));
    assert_eq!(astheno(&["table", "--id", "0"]).status.code(), Some(2));
}

#[test]
fn scan_matrix() {
    let o = astheno(&[
        "--format",
        "json",
        "scan",
        "--max-m1",
        "3",
        "--max-m2",
        "3",
        "--condition",
        "astheno",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 81);

    let o = astheno(&["scan", "--max-m1", "1", "--max-m2", "1"]);
    let row = stdout(&o)
        .lines()
        .find(|l| l.trim_start().starts_with("1,1"))
        .unwrap()
        .to_string();
    let zeros: Vec<bool> = row.split_whitespace().skip(1).map(|c| c == "0").collect();
    assert_eq!(
        zeros,
        [true, false, true, false, false, false, true, false, true]
    );

    let o = astheno(&[
        "scan",
        "--max-m1",
        "2",
        "--max-m2",
        "2",
        "--condition",
        "skt",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for cell in v["cells"].as_array().unwrap() {
        if cell["factor1"] == "cosymplectic" && cell["factor2"] == "cosymplectic" {
            assert_eq!(cell["verdict"], "identically-zero");
        }
    }
    assert_eq!(
        astheno(&["scan", "--max-m1", "0", "--max-m2", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_paper_passes_and_is_deterministic() {
    let a = astheno(&["verify-paper"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.contains("PASS d-squared-vanishes"));
    assert!(text.contains("printed-zero rows reproduced as zero: 19/19"));
    let b = astheno(&["verify-paper"]);
    assert_eq!(a.stdout, b.stdout);

    let j = astheno(&["verify-paper", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["beta_relation_audit"]["cases"].as_array().unwrap().len() >= 2);
}

#[test]
fn usage_and_help() {
    assert_eq!(astheno(&[]).status.code(), Some(2));
    assert_eq!(astheno(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        astheno(&["--format", "xml", "eval", "--expr", "1"])
            .status
            .code(),
        Some(2)
    );
    let h = astheno(&["--help"]);
    assert_eq!(h.status.code(), Some(0));
    assert!(stdout(&h).contains("verify-paper"));
    assert_eq!(astheno(&["--version"]).status.code(), Some(0));
}

#[test]
fn color_only_touches_text_output() {
    let args = [
        "check",
        "--m1",
        "1",
        "--m2",
        "1",
        "--factor1",
        "cosymplectic",
        "--factor2",
        "cosymplectic",
    ];
    let plain = astheno(&args);
    let colored = Command::new(env!("CARGO_BIN_EXE_astheno"))
        .args(args)
        .env("ASTHENO_COLOR", "on")
        .output()
        .unwrap();
    assert_eq!(plain.status.code(), colored.status.code());
    assert!(stdout(&colored).contains("\x1b[32m"));
    let json_args = [
        "--format",
        "json",
        "check",
        "--m1",
        "1",
        "--m2",
        "1",
        "--factor1",
        "cosymplectic",
        "--factor2",
        "cosymplectic",
    ];
    let json_colored = Command::new(env!("CARGO_BIN_EXE_astheno"))
        .args(json_args)
        .env("ASTHENO_COLOR", "on")
        .output()
        .unwrap();
    assert_eq!(json_colored.stdout, astheno(&json_args).stdout);
}
