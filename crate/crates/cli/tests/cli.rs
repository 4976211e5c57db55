use std::process::{Command, Output};

use ringprob::parse_ring;
use ringprob_cli::corpus::default_corpus;
use serde_json::Value;

fn ringprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringprob"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn prob_on_z6() {
    let out = ringprob(&["prob", "--ring", "Z6", "--x", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["fraction"], "15/36");
    assert_eq!(v["hits"], "15");
    assert_eq!(v["total"], "36");
    assert_eq!(v["size"], 6);
    assert!(v["decimal"].as_str().unwrap().starts_with("0.41666"));
    let v = json(&ringprob(&["prob", "--ring", "Z6", "--x", "-1"]));
    assert_eq!(v["fraction"], "2/36");
}

#[test]
fn prob_methods_agree() {
    for (ring, x) in [
        ("Z12", "4"),
        ("M2(GF3)", "[[1,0],[0,0]]"),
        ("chain(3,2)", "0,1"),
        ("Z2 x Z4", "(0,2)"),
    ] {
        let fractions: Vec<Value> = ["auto", "brute", "annsum", "formula"]
            .iter()
            .map(|m| {
                json(&ringprob(&[
                    "prob", "--ring", ring, "--x", x, "--method", m,
                ]))["fraction"]
                    .clone()
            })
            .collect();
        assert!(
            fractions.iter().all(|f| *f == fractions[0]),
            "{ring} {x}: {fractions:?}"
        );
    }
}

#[test]
fn explain_names_formula_and_hypotheses() {
    let v = json(&ringprob(&[
        "prob",
        "--ring",
        "Z8",
        "--x",
        "2",
        "--explain",
    ]));
    assert_eq!(v["explain"]["formula"], "chain-layer");
    let hyps = v["explain"]["hypotheses"].as_array().unwrap();
    assert!(hyps.iter().any(|h| h.as_str().unwrap().contains("J^1")));
}

#[test]
fn spectrum_csv_for_m2_gf2() {
    let out = ringprob(&["spectrum", "--ring", "M2(GF2)", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let mut hits: Vec<u64> = rows
        .iter()
        .map(|r| r.rsplit(',').nth(3).unwrap().parse().unwrap())
        .collect();
    hits.sort();
    assert_eq!(hits, [6, 18, 58]);
}

#[test]
fn spectrum_json_sums_to_total() {
    let v = json(&ringprob(&["spectrum", "--ring", "Z2 x triv(2,2)"]));
    let sum: u64 = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["hits"].as_str().unwrap().parse::<u64>().unwrap() * c["members"].as_u64().unwrap()
        })
        .sum();
    assert_eq!(sum.to_string(), v["total"].as_str().unwrap());
}

#[test]
fn structure_report() {
    let v = json(&ringprob(&["structure", "--ring", "Z8"]));
    assert_eq!(v["units"], 4);
    assert_eq!(v["zero_divisors"], 4);
    assert_eq!(v["radical_chain_sizes"], serde_json::json!([4, 2, 1]));
    assert_eq!(v["q"], 2);
    assert_eq!(v["n"], 3);
    assert_eq!(v["is_max_chain"], true);
    assert_eq!(v["is_j2_zero"], false);
    let v = json(&ringprob(&["structure", "--ring", "Z6"]));
    assert_eq!(v["is_local"], false);
    assert!(v["q"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(
        ringprob(&["prob", "--ring", "GF6", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ringprob(&["prob", "--ring", "Q5", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ringprob(&["prob", "--ring", "Z5", "--x", "zz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ringprob(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ringprob(&["spectrum", "--ring", "Z5000"]).status.code(),
        Some(3)
    );
    assert_eq!(
        ringprob(&["prob", "--ring", "Z5000", "--x", "0", "--method", "brute"])
            .status
            .code(),
        Some(3)
    );
    let table = format!("table:{}", ringprob_cli::corpus::UPPER_TRIANGULAR_PATH);
    assert_eq!(
        ringprob(&["prob", "--ring", &table, "--x", "#4", "--method", "formula"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn force_lifts_the_cap() {
    let out = ringprob(&[
        "--force", "prob", "--ring", "Z4099", "--x", "1", "--method", "auto",
    ]);
    assert!(out.status.success());
    // Units of Z_p: (p-1)/p^2.
    assert_eq!(json(&out)["fraction"], "4098/16801801");
}

#[test]
fn matrix_formula_needs_no_enumeration() {
    let out = ringprob(&[
        "prob", "--ring", "M4(GF2)", "--x", "#0", "--method", "formula",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["size"], 65536);
}

#[test]
fn verify_chain_suite() {
    let out = ringprob(&["verify", "--suite", "thm46", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cases = v["suites"][0]["cases"].as_array().unwrap();
    let status = |ring: &str| {
        cases
            .iter()
            .filter(|c| c["ring"] == ring)
            .map(|c| c["status"].as_str().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    for ring in [
        "Z4",
        "Z8",
        "Z9",
        "Z27",
        "chain(2,2)",
        "chain(3,3)",
        "GR(2,2,2)",
    ] {
        assert!(status(ring).iter().all(|s| s == "pass"), "{ring}");
    }
    for ring in ["Z6", "M2(GF2)", "triv(2,3)"] {
        assert_eq!(status(ring), ["skip"], "{ring}");
        let reason = cases.iter().find(|c| c["ring"] == ring).unwrap()["reason"]
            .as_str()
            .unwrap();
        assert!(!reason.is_empty());
    }
}

#[test]
fn verify_is_deterministic() {
    let a = ringprob(&["verify"]);
    let b = ringprob(&["verify"]);
    let c = ringprob(&["--sequential", "verify"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let csv = ringprob(&["verify", "--format", "csv", "--suite", "lemma24,lemma25"]);
    assert!(stdout(&csv).starts_with("suite,ring,case,status,expected,actual,reason\n"));
}

#[test]
fn custom_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    std::fs::write(&path, r#"["Z10", "chain(5,2)", "GF8 x Z3"]"#).unwrap();
    let out = ringprob(&[
        "verify",
        "--corpus",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let rings: std::collections::HashSet<String> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| {
            s["cases"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c["ring"].as_str().unwrap().to_string())
        })
        .collect();
    assert!(rings.contains("chain(5,2)") && rings.contains("GF8xZ3"));

    std::fs::write(&path, "not json").unwrap();
    assert_eq!(
        ringprob(&["verify", "--corpus", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn corpus_round_trips_through_spec_strings() {
    let corpus = default_corpus();
    assert_eq!(corpus.len(), 28);
    for c in &corpus {
        let spec = c.ring.spec_string().unwrap();
        assert_eq!(*parse_ring(&spec).unwrap(), *c.ring, "{spec}");
        c.ring.audit_axioms(100_000, 1).unwrap();
        assert!(c.ring.size() <= 512);
    }
    assert!(!corpus.last().unwrap().ring.is_commutative());
}
