//! Runs the fuzz target bodies over their seed corpora.

use std::path::Path;

use germlab::cli::{parse_epsilon, parse_input_bytes};
use germlab::expr::parse::{parse, parse_bytes};
use germlab::expr::rat::GaussRat;
use germlab::report::ReportDocument;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<Vec<u8>> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read(e.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out.sort();
    out
}

#[test]
fn parse_expr_seeds() {
    let mut parsed = 0;
    for data in seeds("parse_expr") {
        if let Ok(p) = parse_bytes(&data) {
            assert_eq!(parse(&p.to_string()).unwrap(), p);
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn input_file_seeds() {
    let ok = seeds("input_file")
        .iter()
        .filter(|d| parse_input_bytes(d).is_ok())
        .count();
    assert_eq!(ok, 2);
}

#[test]
fn t_value_seeds() {
    for data in seeds("t_value") {
        let text = std::str::from_utf8(&data).unwrap();
        if let Ok(t) = GaussRat::parse(text) {
            assert_eq!(GaussRat::parse(&t.to_string()).unwrap(), t);
        }
        let _ = parse_epsilon(text);
    }
}

#[test]
fn report_json_seeds() {
    for data in seeds("report_json") {
        let doc = ReportDocument::from_json(std::str::from_utf8(&data).unwrap()).unwrap();
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
