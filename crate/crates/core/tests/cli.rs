use std::process::Command;

use fieldext::cli::parse::{parse_poly, InputSpec};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fieldext")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run(args);
    (code, serde_json::from_str(&out).expect("stdout is JSON"))
}

#[test]
fn classify_reports_galois() {
    let (code, doc) = json(&["classify", "--base", "Q", "--ext", "x^2-2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["galois"], true);
    assert_eq!(doc["report"]["aut_order"], 2);
    assert_eq!(doc["report"]["group_id"], "C2");
    for key in ["tool_version", "input", "report", "notes"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
}

#[test]
fn composite_generators() {
    let (code, doc) = json(&["composite", "--base", "Q", "--ext", "x^3-2", "--bound", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["noetherian"], true);
    assert_eq!(doc["report"]["generators"], serde_json::json!(["x", "a*x", "a^2*x"]));
    assert_eq!(doc["report"]["certificate"]["witnesses"].as_array().unwrap().len(), 12);
}

#[test]
fn composite_over_infinite_marker() {
    let (code, doc) = json(&["composite", "--base", "Q", "--infinite", "algebraic"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["noetherian"], false);
    assert_eq!(doc["report"]["degree"], "infinite");
}

#[test]
fn magid_inseparable() {
    let (code, doc) = json(&["magid", "--base", "GF(2)(t)", "--ext", "x^2-t"]);
    assert_eq!(code, 0);
    let r = &doc["report"];
    assert_eq!(r["separable"], false);
    assert_eq!(r["nilradical_dim"], 1);
    assert_eq!(r["reduced"], false);
    assert_eq!(r["unit_times_idempotent"], false);
    assert_eq!(r["idempotent_generated"], false);
    assert!(doc["notes"].as_array().unwrap().iter().any(|n| n == "M = splitting field surrogate"));
}

#[test]
fn exit_codes() {
    let (code, doc) = json(&["classify", "--base", "GF(3)", "--ext", "x^2 - 1/2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["column"], 8);
    assert_eq!(run(&["classify", "--base", "R", "--ext", "x"]).0, 1);
    assert_eq!(run(&["classify"]).0, 1);
    let (code, doc) = json(&["classify", "--base", "GF(2)(t)", "--ext", "x^2-t", "--ext", "x^4+x+a"]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "capability");
}

#[test]
fn trusted_accepts_undecidable_level() {
    let (code, doc) = json(&["classify", "--base", "GF(2)(t)", "--ext", "x^2-t", "--ext", "x^4+x+a", "--trusted"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["degree"], 8);
}

#[test]
fn output_is_deterministic() {
    let args = ["magid", "--base", "Q", "--ext", "x^3-2", "--seed", "7"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["classify", "--base", "GF(2)", "--ext", "x^4+x+1", "--format", "text"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&args).1);
    assert!(a.contains("group_id: C4"));
}

#[test]
fn verify_custom_catalog() {
    let dir = std::env::temp_dir().join(format!("fieldext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(
        &path,
        r#"[{"name": "sqrt2", "base": "Q", "ext": ["x^2-2"], "expected": {"galois": true}},
            {"name": "wrong", "base": "Q", "ext": ["x^3-2"], "expected": {"normal": true}}]"#,
    )
    .unwrap();
    let (code, doc) = json(&["verify", "--catalog", path.to_str().unwrap(), "--bound", "2"]);
    // the false expectation fails the run without any statement violation
    assert_eq!(code, 2);
    assert_eq!(doc["report"]["summary"]["violation"], 0);
    assert_eq!(doc["report"]["fixture_mismatches"].as_array().unwrap().len(), 1);
    std::fs::write(&path, "[]").unwrap();
    let (code, doc) = json(&["verify", "--catalog", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(doc["report"]["rows"].as_array().unwrap().is_empty());
    std::fs::write(&path, "[{").unwrap();
    assert_eq!(run(&["verify", "--catalog", path.to_str().unwrap()]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn coeff() -> impl Strategy<Value = String> {
    prop_oneof![
        (-9i64..=9).prop_map(|n| n.to_string()),
        ((-9i64..=9), (1i64..=9)).prop_map(|(n, d)| format!("{n}/{d}")),
        Just("a".to_string()),
        Just("(a - 1/2)".to_string()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_print_parse_fixed_point(terms in prop::collection::vec((coeff(), 0usize..5), 1..5)) {
        let built = InputSpec::new("Q", &["x^2-2"]).build().unwrap();
        let l = built.top();
        let src = terms.iter().map(|(c, e)| format!("({c})*x^{e}")).collect::<Vec<_>>().join(" + ");
        let p = parse_poly(&src, l).unwrap();
        let printed = p.to_string();
        let again = parse_poly(&printed, l).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn parse_print_over_rational_functions(num in prop::collection::vec(0u64..3, 1..4), den in prop::collection::vec(0u64..3, 1..3), e in 0usize..4) {
        prop_assume!(den.iter().any(|&d| d != 0));
        let built = InputSpec::new("GF(3)(t)", &[]).build().unwrap();
        let k = built.top();
        let poly_t = |cs: &[u64]| cs.iter().enumerate().map(|(i, c)| format!("{c}*t^{i}")).collect::<Vec<_>>().join(" + ");
        let src = format!("({})/({})*x^{e} + x^5", poly_t(&num), poly_t(&den));
        let p = parse_poly(&src, k).unwrap();
        prop_assert_eq!(parse_poly(&p.to_string(), k).unwrap(), p);
    }
}
