use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use germlab::report::ReportDocument;
use serde_json::Value;

fn germlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (ReportDocument, Value) {
    let o = germlab(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    (
        ReportDocument::from_json(&text).unwrap(),
        serde_json::from_str(&text).unwrap(),
    )
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against a stored report; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let o = germlab(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let actual = stdout(&o);
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {name}; run with UPDATE_GOLDEN=1"));
    assert_eq!(actual, expected, "report for {name} changed");
}

const HP: &str = "x^3 + y^6 - 3*t^2*x*y^4";

#[test]
fn golden_hp_analyze() {
    check_golden(
        "hp_analyze.json",
        &[
            "analyze",
            "--expr",
            HP,
            "--t",
            "1/4",
            "--t",
            "1/3",
            "--domain",
            "0<|t|<1/2",
            "--json",
        ],
    );
}

#[test]
fn golden_y7_analyze() {
    check_golden(
        "y7_analyze.json",
        &[
            "analyze",
            "--expr",
            "x^3 + (1+t)*y^7",
            "--t",
            "0",
            "--t",
            "1",
            "--json",
        ],
    );
}

#[test]
fn golden_z5_analyze() {
    check_golden(
        "z5_analyze.json",
        &[
            "analyze",
            "--expr",
            "x^4+y^4+z^5+t*x^2*y^2",
            "--t",
            "0",
            "--t",
            "1",
            "--domain",
            "|t|<2",
            "--json",
        ],
    );
}

#[test]
fn golden_whitney_analyze() {
    check_golden(
        "whitney_analyze.json",
        &[
            "analyze",
            "--expr",
            "x*y*(x-y)*(x-t*y)",
            "--t",
            "1/2",
            "--domain",
            "0<|t|<1",
            "--json",
        ],
    );
}

#[test]
fn golden_numeric_invariants() {
    check_golden(
        "numeric_invariants.json",
        &[
            "invariants",
            "--expr",
            "x^3+y^6+t*x*y^4",
            "--t",
            "-3",
            "--t",
            "1",
            "--json",
        ],
    );
}

#[test]
fn golden_membership_and_milnor() {
    check_golden(
        "y7_membership.json",
        &[
            "membership",
            "--expr",
            "x^3 + (1+t)*y^7",
            "--t",
            "-1",
            "--t",
            "2",
            "--json",
        ],
    );
    check_golden(
        "hp_milnor.json",
        &["milnor", "--expr", HP, "--t", "1/4", "--json"],
    );
    check_golden(
        "hp_polar.json",
        &["polar", "--expr", HP, "--t", "1/4", "--json"],
    );
}

#[test]
fn analyze_hp_reports_witness() {
    let (doc, v) = json(&[
        "analyze", "--expr", HP, "--t", "1/4", "--t", "1/3", "--json",
    ]);
    let verdict = doc.verdict.unwrap();
    assert_eq!(verdict.label, "FailsKCondition");
    assert_eq!(verdict.t.as_deref(), Some("1/4"));
    let w = &v["verdict"]["witness"];
    let mut ks = vec![
        w["k_i"]["value"].as_str().unwrap(),
        w["k_j"]["value"].as_str().unwrap(),
    ];
    ks.sort();
    assert_eq!(ks, vec!["-2/31", "2/33"]);
    assert!(doc.footnotes.iter().any(|f| f.contains("w_1>w_2")));
}

#[test]
fn analyze_positive_control() {
    let (doc, _) = json(&[
        "analyze",
        "--expr",
        "x^3 + (1+t)*y^7",
        "--t",
        "0",
        "--t",
        "1",
        "--json",
    ]);
    assert_eq!(doc.verdict.unwrap().label, "AnalyticallyTrivialGeneric");
    let cert = doc.membership.unwrap().certificate.unwrap();
    assert_eq!(cert.denominator, "t + 1");
    assert_eq!(cert.exceptional_t, vec!["-1"]);
    assert_eq!(cert.multipliers.len(), 1);
    assert_eq!(cert.multipliers[0].generator, "y*F_y");
    assert_eq!(cert.multipliers[0].numerator, "1/7");
}

#[test]
fn constant_family_needs_flag() {
    let o = germlab(&["analyze", "--expr", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--allow-constant"));
    let o = germlab(&["analyze", "--expr", "x^3 + y^5", "--allow-constant"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn input_errors_exit_2() {
    let o = germlab(&[
        "analyze",
        "--expr",
        "x^3 + y^6 - 3*t^2*x*y^4",
        "--t",
        "0.25",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fraction"));
    let o = germlab(&["analyze", "--expr", "x^3 + 2x*y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position"));
    assert_eq!(
        germlab(&["analyze", "--expr", HP, "--precision", "32"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        germlab(&["analyze", "--expr", HP, "--epsilon", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(germlab(&["analyze"]).status.code(), Some(2));
    assert_eq!(germlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        germlab(&["polar", "--expr", "x^4+y^4+z^5+t*x^2*y^2", "--t", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn io_errors_exit_3() {
    let o = germlab(&["analyze", "--file", "/nonexistent/family.txt"]);
    assert_eq!(o.status.code(), Some(3));
    let o = germlab(&[
        "analyze",
        "--expr",
        HP,
        "--t",
        "1/4",
        "--out",
        "/nonexistent/dir/report.json",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn file_input_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("hp.txt");
    std::fs::write(
        &input,
        format!("{HP}\nt = 1/4\nt = 1/3\ndomain = 0<|t|<1/2\n"),
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = germlab(&[
        "analyze",
        "--file",
        input.to_str().unwrap(),
        "--json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let doc = ReportDocument::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.input.domain.as_deref(), Some("0<|t|<1/2"));
    assert_eq!(doc.input.t_samples, vec!["1/4", "1/3"]);
    assert_eq!(doc.verdict.unwrap().label, "FailsKCondition");
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let args = [
        "invariants",
        "--expr",
        "x^3+y^6+t*x*y^4",
        "--t",
        "-3",
        "--t",
        "1",
    ];
    let text = stdout(&germlab(&args));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let (doc, _) = json(&with_json);
    for s in &doc.samples {
        for b in &s.k.as_ref().unwrap().branches {
            let shown = match &b.k {
                germlab::report::KValueDoc::Value {
                    k: germlab::report::Number::Exact { value },
                } => value.clone(),
                germlab::report::KValueDoc::Value {
                    k: germlab::report::Number::Ball { approx, .. },
                } => approx.clone(),
                other => panic!("{other:?}"),
            };
            assert!(text.contains(&shown), "{shown}");
        }
    }
    assert!(text.contains("DISTINGUISHED") || text.contains("NOT_DISTINGUISHED"));
}

#[test]
fn json_round_trips_through_the_library() {
    let (doc, _) = json(&["analyze", "--expr", "x^3+y^6+t*x*y^4", "--t", "1", "--json"]);
    assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    let s = &doc.samples[0];
    let v = serde_json::to_value(&s.polar.as_ref().unwrap().branches[0].a).unwrap();
    assert_eq!(v["kind"], "ball");
    assert!(v["radius"].as_str().unwrap().contains('/'));
}

#[test]
fn corpus_command_passes() {
    let o = germlab(&["corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all reference values reproduced"));
    let o = germlab(&["corpus", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn weight_swap_is_reported() {
    let (doc, _) = json(&[
        "analyze",
        "--expr",
        "y^3 + x^6 - 3*t^2*y*x^4",
        "--t",
        "1/4",
        "--json",
    ]);
    let w = doc.weights.unwrap();
    assert!(w.swapped);
    assert_eq!(w.weights, vec![2, 1]);
    assert_eq!(doc.verdict.unwrap().label, "FailsKCondition");
}
