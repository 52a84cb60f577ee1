use std::path::PathBuf;
use std::process::Command;

use quandle_cli::document::TableDocument;
use quandle_cli::{load_table, run_with_cap};
use quandle_core::composition::compose;
use quandle_core::constructions::catalog_table;
use quandle_core::OpTable;

fn qf(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qf").chain(args.iter().copied());
    let code = run_with_cap(argv, 7, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tables(output: &str) -> Vec<OpTable> {
    TableDocument::parse_all(output)
        .unwrap()
        .iter()
        .map(|d| d.to_table().unwrap())
        .collect()
}

/// Tables anywhere in structured output.
fn json_tables(value: &serde_json::Value, found: &mut Vec<OpTable>) {
    let Some(map) = value.as_object() else { return };
    for (key, v) in map {
        if key != "tables" {
            json_tables(v, found);
        }
    }
    for t in map
        .get("tables")
        .and_then(|t| t.as_array())
        .into_iter()
        .flatten()
    {
        found.push(
            TableDocument::parse(&t.to_string())
                .unwrap()
                .to_table()
                .unwrap(),
        );
    }
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("qf-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const TRIVIAL_FAMILY: &str = r#"{
  "x_size": 3,
  "index": { "kind": "quandle", "rows": [[0, 0], [1, 1]] },
  "ops": [ [[0, 0, 0], [1, 1, 1], [2, 2, 2]], [[0, 2, 1], [2, 1, 0], [1, 0, 2]] ]
}"#;

const BROKEN_FAMILY: &str = r#"{
  "x_size": 3,
  "index": { "kind": "quandle", "rows": [[0, 0], [1, 1]] },
  "ops": [ [[0, 0, 0], [1, 1, 1], [2, 2, 2]], [[0, 0, 0], [0, 1, 1], [2, 2, 2]] ]
}"#;

#[test]
fn reproduce_r3j3_prints_the_product() {
    let (code, out, _) = qf(&["reproduce", "r3j3"]);
    assert_eq!(code, 0);
    assert!(out.contains("classification: idempotent-right-quasigroup"));
    let expected = compose(&catalog_table("R3").unwrap(), &catalog_table("J3").unwrap()).unwrap();
    assert_eq!(tables(&out), vec![expected]);
}

#[test]
fn closure_of_conj_and_core_of_q8() {
    let conj = scratch("conj_q8.txt", &qf(&["build", "conj:Q8"]).1);
    let core = scratch("core_q8.txt", &qf(&["build", "core:Q8"]).1);
    let (code, out, _) = qf(&["closure", &conj, &core]);
    assert_eq!(code, 0);
    assert!(out.contains("order: 4\n"));
    assert!(out.contains("abelian: true\n"));
    assert!(out.contains("iso_type: Z2xZ2\n"));
    assert_eq!(tables(&out).len(), 4);
}

#[test]
fn enumerate_four_gives_seven() {
    let (code, out, _) = qf(&["enumerate", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("count: 7\n"));
    let found = tables(&out);
    assert_eq!(found.len(), 7);
    assert!(found.iter().all(OpTable::is_quandle));
}

#[test]
fn written_tables_reparse() {
    let commands: &[&[&str]] = &[
        &["build", "R3"],
        &["build", "holomorph:Z5"],
        &["build", "conj:D4:2"],
        &["build", "alexander:7:3"],
        &["compose", "Q1", "Q2"],
        &["power", "Z5-Alex2", "-2"],
        &["word", "R3", "J3", "a b^-1 a"],
        &["closure", "conj:Q8", "core:Q8"],
        &["enumerate", "3", "--labeled"],
        &["reproduce", "order4"],
        &["reproduce", "abelianization"],
    ];
    for args in commands {
        let (code, zero, _) = qf(args);
        assert_eq!(code, 0, "{args:?}");
        let mut one_indexed = args.to_vec();
        one_indexed.push("--one-indexed");
        let (_, one, _) = qf(&one_indexed);
        let expected = tables(&zero);
        assert!(!expected.is_empty(), "{args:?}");
        assert_eq!(tables(&one), expected, "{args:?}");
        for doc in TableDocument::parse_all(&zero).unwrap() {
            assert_eq!(TableDocument::parse(&doc.to_text()).unwrap(), doc);
        }
        let (_, json, _) = qf(&[&["--format", "structured"], *args].concat());
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let mut from_json = Vec::new();
        json_tables(&value, &mut from_json);
        let mut sorted = expected.clone();
        sorted.sort();
        from_json.sort();
        assert_eq!(from_json, sorted, "{args:?}");
    }
}

#[test]
fn build_files_load_as_the_same_table() {
    for spec in ["T3", "J3", "Q6", "dihedral:5", "core:S3", "trivial:4"] {
        let path = scratch(
            &format!("{}.txt", spec.replace(':', "_")),
            &qf(&["build", spec]).1,
        );
        assert_eq!(load_table(&path).unwrap(), load_table(spec).unwrap());
    }
}

#[test]
fn exit_code_matrix() {
    let family_ok = scratch("family_ok.json", TRIVIAL_FAMILY);
    let family_bad = scratch("family_bad.json", BROKEN_FAMILY);
    let garbage = scratch("garbage.txt", "n: 2\nrows:\n0 7\n1 1\n");
    let not_json = scratch("not_json.json", "{ x_size: 3");
    let r3j3 = scratch("r3j3.txt", &qf(&["compose", "R3", "J3"]).1);
    let cases: &[(&[&str], i32)] = &[
        (&["build", "R3"], 0),
        (&["build", "group:S3"], 0),
        (&["build", "nonsense"], 2),
        (&["build", "alexander:6:2"], 2),
        (&["check", "R3"], 0),
        (&["check", &r3j3], 1),
        (&["check", &garbage], 2),
        (&["check", "/no/such/file"], 2),
        (&["compose", "R3", "J3"], 0),
        (&["compose", "R3", "Q0"], 3),
        (&["power", "R3", "-3"], 0),
        (&["power", "R3", "x"], 2),
        (&["power", &r3j3, "2"], 0),
        (&["distrib", "conj:S3", "core:S3"], 0),
        (&["distrib", "core:S3", "conj:S3"], 1),
        (&["distrib", "R3", "Q1"], 3),
        (&["word", "R3", "J3", "a b"], 0),
        (&["word", "R3", "J3", "a c"], 2),
        (&["word", "R3", "J3", "x^2", "--names", "x"], 2),
        (&["word", "R3", "J3", "x y^-1", "--names", "x,y"], 0),
        (&["closure", "conj:Q8", "core:Q8"], 0),
        (&["closure", "conj:S3", "core:S3"], 3),
        (&["closure", "conj:S3", "core:S3", "--explore"], 0),
        (&["closure", "R3", "Q0"], 3),
        (&["family", "validate", &family_ok], 0),
        (&["family", "validate", &family_bad], 1),
        (&["family", "validate", &not_json], 2),
        (&["family", "assoc", &family_ok], 0),
        (&["family", "assoc", &family_bad], 3),
        (&["enumerate", "4"], 0),
        (&["enumerate", "3", "--labeled", "--count-only"], 0),
        (&["enumerate", "4", "--racks", "--count-only"], 0),
        (&["enumerate", "8"], 3),
        (&["enumerate", "6", "--racks"], 3),
        (&["enumerate", "0"], 2),
        (&["survey", "T3", "R3", "J3"], 0),
        (&["survey", "R3", "Q0"], 3),
        (&["iso", "Q2", "Q2"], 0),
        (&["iso", "Q1", "Q2"], 1),
        (&["iso", "R3", "Q0"], 1),
        (&["rank", "R3"], 0),
        (&["rank", &r3j3], 3),
        (&["reproduce", "list"], 0),
        (&["reproduce", "counts"], 0),
        (&["reproduce", "nope"], 2),
        (&[], 2),
        (&["frobnicate"], 2),
        (&["--format", "xml", "build", "R3"], 2),
    ];
    for (args, want) in cases {
        let (code, _, err) = qf(args);
        assert_eq!(code, *want, "qf {args:?}: {err}");
        if *want >= 2 {
            assert!(!err.is_empty(), "qf {args:?} should explain the failure");
        }
    }
}

#[test]
fn family_outputs() {
    let family_ok = scratch("family_assoc.json", TRIVIAL_FAMILY);
    let (_, out, _) = qf(&["family", "validate", &family_ok]);
    assert!(out.contains("kind: Q-family\nvalid: true\n"));
    let (_, out, _) = qf(&["family", "assoc", &family_ok]);
    let assoc = tables(&out);
    assert_eq!(assoc.len(), 1);
    assert_eq!(assoc[0].n(), 6);
    assert!(assoc[0].is_quandle());
    let family_bad = scratch("family_violation.json", BROKEN_FAMILY);
    let (_, out, _) = qf(&["family", "validate", &family_bad]);
    assert!(out.contains("valid: false\naxiom: 2\n"), "{out}");
}

#[test]
fn distrib_reports_both_directions() {
    let (code, out, _) = qf(&["distrib", "core:S3", "conj:S3"]);
    assert_eq!(code, 1);
    assert!(
        out.contains("distributes: false\ncounterexample: 0 1 3\nconverse_distributes: true\n"),
        "{out}"
    );
}

#[test]
fn binary_honours_the_enumeration_cap() {
    let bin = env!("CARGO_BIN_EXE_qf");
    let run = |cap: &str, args: &[&str]| {
        Command::new(bin)
            .env("QF_MAX_N", cap)
            .args(args)
            .output()
            .unwrap()
    };
    assert_eq!(
        run("4", &["enumerate", "5", "--count-only"]).status.code(),
        Some(3)
    );
    let ok = run("5", &["enumerate", "5", "--count-only"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("count: 22"));
    assert_eq!(run("lots", &["enumerate", "3"]).status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
