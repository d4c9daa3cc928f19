use std::path::PathBuf;
use std::process::Command as Process;

use clap::Parser;
use halg_cli::spec::{self, parse_spec, CocycleSpec};
use halg_cli::{execute, run, Cli, CliError};
use halg_core::random::Generator;
use proptest::prelude::*;
use serde_json::Value;

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.halg"));
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("halg").chain(args.iter().copied()))
        .expect("valid command line")
}

fn halg(args: &[&str]) -> (String, i32) {
    run(&cli(args))
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (out, code) = halg(&full);
    (
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
        code,
    )
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("halg-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn witnesses(report: &Value) -> Vec<&Value> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["witnesses"].as_array().unwrap())
        .collect()
}

#[test]
fn exam32_document_has_the_listed_shape() {
    let doc = parse_spec(&std::fs::read_to_string(corpus("exam32")).unwrap()).unwrap();
    assert_eq!(doc.basis.len(), 3);
    assert_eq!(doc.products.len(), 1);
    assert_eq!(doc.maps.len(), 1);
    doc.validate().unwrap();
}

#[test]
fn corpus_documents_round_trip() {
    for name in [
        "exam32",
        "exam33",
        "exam35-doubled",
        "poisson-example",
        "poisson-literal",
        "svir",
        "virasoro",
        "current-from-exam32",
        "quadratic-from-exam32",
    ] {
        let text = std::fs::read_to_string(corpus(name)).unwrap();
        let doc = parse_spec(&text).unwrap();
        doc.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = parse_spec(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}

#[test]
fn empty_basis_is_a_validation_error() {
    let e = parse_spec(r#"{"schema": 1, "basis": []}"#)
        .unwrap()
        .validate()
        .unwrap_err();
    assert!(matches!(e, CliError::Validation { .. }), "{e}");
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn parity_violations_name_the_entry() {
    let doc = r#"{
        "schema": 1,
        "basis": [{"name": "x1", "parity": "even"}, {"name": "y", "parity": "odd"}],
        "products": {"circ": [
            {"left": "x1", "right": "y", "result": [["y", "1"]]},
            {"left": "x1", "right": "x1", "result": [["y", "1"]]}
        ]}
    }"#;
    let e = parse_spec(doc).unwrap().validate().unwrap_err();
    match &e {
        CliError::Validation { path, .. } => assert_eq!(path, "products.circ[1]"),
        other => panic!("{other}"),
    }
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn unknown_names_and_bad_literals_carry_paths() {
    let doc = r#"{
        "schema": 1,
        "basis": [{"name": "x", "parity": "even"}],
        "maps": {"alpha": [{"source": "x", "result": [["z", "1"]]}]}
    }"#;
    match parse_spec(doc).unwrap().validate().unwrap_err() {
        CliError::Validation { path, .. } => assert_eq!(path, "maps.alpha[0].result[0]"),
        other => panic!("{other}"),
    }
    let doc = r#"{
        "schema": 1,
        "basis": [{"name": "x", "parity": "even"}],
        "products": {"mul": [{"left": "x", "right": "x", "result": [["x", "q+"]]}]}
    }"#;
    match parse_spec(doc).unwrap().validate().unwrap_err() {
        CliError::Validation { path, .. } => assert_eq!(path, "products.mul[0].result[0]"),
        other => panic!("{other}"),
    }
}

#[test]
fn syntax_errors_and_unknown_fields_are_parse_errors() {
    for doc in [
        r#"{"schema": 1,"#,
        r#"{"schema": 1, "basis": [], "extra": 0}"#,
        "[]",
    ] {
        let e = parse_spec(doc).unwrap_err();
        assert!(matches!(e, CliError::Parse(_)), "{e}");
        assert_eq!(e.exit_code(), 2);
    }
    let e = parse_spec(r#"{"schema": 7, "basis": []}"#).unwrap_err();
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn exit_codes_for_files_and_arguments() {
    assert_eq!(
        halg(&["check", "/nonexistent.halg", "--structure", "gd"]).1,
        2
    );
    assert_eq!(
        halg(&["affinize", &corpus("exam32"), "--window", "3..-3"]).1,
        2
    );
    assert_eq!(halg(&["affinize", &corpus("exam32"), "--window", "x"]).1, 2);
    let bad = temp("empty-basis.halg");
    std::fs::write(&bad, r#"{"schema": 1, "basis": []}"#).unwrap();
    assert_eq!(
        halg(&["check", bad.to_str().unwrap(), "--structure", "gd"]).1,
        3
    );
}

#[test]
fn binary_reports_usage_errors_with_code_two() {
    let bin = env!("CARGO_BIN_EXE_halg");
    let out = Process::new(bin).args(["check"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Process::new(bin)
        .args(["affinize", &corpus("exam32")])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "--delta or --window is required"
    );
    let out = Process::new(bin)
        .args(["check", &corpus("exam32"), "--structure", "gd"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("check gd: PASS"));
}

#[test]
fn exam32_is_gd_but_not_classically_novikov() {
    assert_eq!(
        halg(&["check", &corpus("exam32"), "--structure", "gd"]).1,
        0
    );
    let (report, code) = json(&["check", &corpus("exam32"), "--structure", "novikov-super"]);
    assert_eq!(code, 1);
    assert_eq!(report["schema"], 1);
    let found = witnesses(&report).into_iter().any(|w| {
        w["args"] == serde_json::json!(["x1", "x2", "x1"])
            && w["residual"] == serde_json::json!([["x1", "1"]])
    });
    assert!(found, "{report:#}");
}

#[test]
fn svir_twists_form_a_line() {
    let (report, code) = json(&["solve-alpha", &corpus("svir"), "--degree", "2"]);
    assert_eq!(code, 0);
    let s = &report["solutions"];
    assert_eq!(s["dimension"], 1);
    let table = &s["rendered"][0]["entries"];
    assert_eq!(
        table,
        &serde_json::json!([["α(L)", "L"], ["α(F)", "F"], ["α(G)", "G"]])
    );
}

#[test]
fn json_reports_carry_every_text_witness() {
    let cases: [&[&str]; 4] = [
        &[
            "check",
            &corpus("exam32"),
            "--structure",
            "hom-novikov-super",
            "--classical",
        ],
        &[
            "check",
            &corpus("poisson-literal"),
            "--structure",
            "hom-poisson",
        ],
        &["construct", "poisson", &corpus("poisson-literal")],
        &[
            "check",
            &corpus("exam35-doubled"),
            "--structure",
            "hom-assoc",
            "--classical",
        ],
    ];
    for args in cases {
        let (text, code) = halg(args);
        let (report, json_code) = json(args);
        assert_eq!(code, json_code);
        let ws = witnesses(&report);
        let text_lines = text.lines().filter(|l| l.contains(" at (")).count();
        assert_eq!(ws.len(), text_lines, "{text}");
        for w in ws {
            let args: Vec<&str> = w["args"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap())
                .collect();
            let residual: Vec<String> = w["residual"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| format!("({})·{}", t[1].as_str().unwrap(), t[0].as_str().unwrap()))
                .collect();
            let line = format!(
                "{} at ({}): residual {}",
                w["axiom"].as_str().unwrap(),
                args.join(", "),
                residual.join(" + ")
            );
            assert!(text.contains(&line), "missing `{line}` in\n{text}");
        }
    }
}

fn without_timing(mut v: Value) -> Value {
    v["elapsed_ms"] = Value::Null;
    v
}

#[test]
fn reports_and_exit_codes_are_deterministic() {
    let cases: [&[&str]; 5] = [
        &["check", &corpus("exam32"), "--structure", "novikov-super"],
        &["cocycles", &corpus("quadratic-from-exam32")],
        &["affinize", &corpus("exam33"), "--delta"],
        &["--seed", "11", "property", "gd-iff", "--count", "30"],
        &[
            "--sequential",
            "--seed",
            "11",
            "property",
            "gd-iff",
            "--count",
            "30",
        ],
    ];
    let mut property_reports = Vec::new();
    for args in cases {
        let (a, ca) = json(args);
        let (b, cb) = json(args);
        assert_eq!(ca, cb);
        assert_eq!(without_timing(a.clone()), without_timing(b));
        if args.contains(&"property") {
            property_reports.push(without_timing(a));
        }
    }
    assert_eq!(
        property_reports[0], property_reports[1],
        "sequential and parallel runs agree"
    );
}

#[test]
fn constructed_documents_reload() {
    let out = temp("sc.halg");
    let (_, code) = halg(&[
        "construct",
        "supercommutator",
        &corpus("exam32"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc = parse_spec(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.products["bracket"].len(), 4);
    assert_eq!(
        halg(&["check", out.to_str().unwrap(), "--structure", "gd"]).1,
        0
    );
    assert_eq!(
        halg(&[
            "check",
            out.to_str().unwrap(),
            "--structure",
            "hom-lie-super"
        ])
        .1,
        0
    );

    let (report, code) = json(&["construct", "star", out.to_str().unwrap(), "--map", "alpha"]);
    assert_eq!(code, 0, "{report:#}");
    let gd: Vec<_> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().ends_with(" gd"))
        .map(|c| c["verdict"].as_str().unwrap())
        .collect();
    assert_eq!(gd, ["pass", "fail"]);
}

#[test]
fn conformalize_and_extract_are_inverse() {
    let sc = temp("sc-conf.halg");
    let q = temp("q.halg");
    let back = temp("back.halg");
    halg(&[
        "construct",
        "supercommutator",
        &corpus("exam32"),
        "-o",
        sc.to_str().unwrap(),
    ]);
    assert_eq!(
        halg(&[
            "conformalize",
            sc.to_str().unwrap(),
            "-o",
            q.to_str().unwrap()
        ])
        .1,
        0
    );
    assert_eq!(
        halg(&[
            "gd-extract",
            q.to_str().unwrap(),
            "-o",
            back.to_str().unwrap()
        ])
        .1,
        0
    );
    let load = |p: &PathBuf| parse_spec(&std::fs::read_to_string(p).unwrap()).unwrap();
    let (a, b) = (load(&sc), load(&back));
    assert_eq!(a.basis, b.basis);
    assert_eq!(a.products, b.products);
    assert_eq!(a.maps, b.maps);
    let shipped = load(&PathBuf::from(corpus("quadratic-from-exam32")));
    assert_eq!(load(&q).conformal, shipped.conformal);
}

#[test]
fn cocycles_on_disk_verify() {
    let dir = temp("q32-cocycles");
    let (report, code) = json(&[
        "cocycles",
        &corpus("quadratic-from-exam32"),
        "-o",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let n = report["solutions"]["dimension"].as_u64().unwrap() as usize;
    assert_eq!(n, 6);
    for k in 1..=n {
        let f = dir.join(format!("cocycle-{k}.json"));
        let (_, code) = halg(&[
            "verify-thm51",
            &corpus("quadratic-from-exam32"),
            "--cocycle",
            f.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "cocycle {k}");
        let (_, code) = halg(&[
            "extend",
            &corpus("quadratic-from-exam32"),
            "--cocycle",
            f.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "cocycle {k}");
    }
}

#[test]
fn non_cocycles_fail_with_witnesses() {
    let f = temp("bad-cocycle.json");
    std::fs::write(
        &f,
        r#"{"schema": 1, "entries": [{"left": "L", "right": "L", "form": "Lm^2"}]}"#,
    )
    .unwrap();
    let (report, code) = json(&[
        "extend",
        &corpus("virasoro"),
        "--cocycle",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(witnesses(&report)
        .iter()
        .any(|w| w["axiom"] == "cocycle-skew-symmetry"));
    std::fs::write(
        &f,
        r#"{"schema": 1, "entries": [{"left": "L", "right": "L", "form": "D"}]}"#,
    )
    .unwrap();
    assert_eq!(
        halg(&[
            "extend",
            &corpus("virasoro"),
            "--cocycle",
            f.to_str().unwrap()
        ])
        .1,
        3
    );
}

#[test]
fn virasoro_extension_by_lambda_cubed() {
    let f = temp("vir-cubed.json");
    std::fs::write(
        &f,
        r#"{"schema": 1, "entries": [{"left": "L", "right": "L", "form": "Lm^3"}]}"#,
    )
    .unwrap();
    let (report, code) = json(&[
        "extend",
        &corpus("virasoro"),
        "--cocycle",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        report["tables"][0]["entries"][0],
        serde_json::json!(["[L_λ L]", "(D + 2*Lm)·L + (Lm^3)·c"])
    );
}

#[test]
fn non_quadratic_brackets_fail_gd_commands() {
    let doc = temp("cubic.halg");
    std::fs::write(
        &doc,
        r#"{"schema": 1, "basis": [{"name": "L", "parity": "even"}],
            "conformal": {"brackets": [{"left": "L", "right": "L", "result": [["L", "D + 2*Lm + Lm^2"]]}]}}"#,
    )
    .unwrap();
    let path = doc.to_str().unwrap();
    for args in [
        vec!["gd-extract", path],
        vec!["check", path, "--structure", "gd"],
    ] {
        let (report, code) = json(&args);
        assert_eq!(code, 1);
        assert!(
            report["notes"][0].as_str().unwrap().contains("[L_λ L]"),
            "{report:#}"
        );
    }
    assert_eq!(halg(&["gd-extract", &corpus("svir")]).1, 0);
}

#[test]
fn property_suites_agree() {
    for suite in ["gd-iff", "affine-iff", "star", "thm51"] {
        let (report, code) = json(&["--seed", "3", "property", suite, "--count", "20"]);
        assert_eq!(code, 0, "{report:#}");
    }
}

#[test]
fn execute_returns_structured_reports() {
    let report = execute(&cli(&["affinize", &corpus("exam32"), "--delta"])).unwrap();
    assert!(report.passed());
    let table = &report.tables[0];
    assert!(table
        .entries
        .contains(&("[x1[m], x1[n]]".into(), "(m - n)·x2[m+n-1]".into())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialized_specs_reparse_identically(seed in any::<u64>(), dim in 2usize..4) {
        let g = Generator::new(seed).gd_structure(dim);
        let doc = spec::from_algebra(&g.algebra, Some(format!("random-{seed}")));
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let again = parse_spec(&text).unwrap();
        prop_assert_eq!(&doc, &again);
        let rebuilt = again.algebra().unwrap().unwrap();
        prop_assert_eq!(&rebuilt, &g.algebra);
    }

    #[test]
    fn cocycle_documents_round_trip(seed in any::<u64>()) {
        let g = Generator::new(seed).gd_structure(3);
        let r = halg_core::conformal::quadratic_from_gd(&g).unwrap();
        for f in halg_core::cext::solve_cocycle_space(&r, 3).basis() {
            let doc = CocycleSpec::from_cocycle(&f, &r.generators);
            let text = serde_json::to_string(&doc).unwrap();
            let back = spec::parse_cocycle(&text).unwrap().cocycle(&r.generators, &r.params).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
