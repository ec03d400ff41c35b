mod common;

use common::corpus::{args, folcalc, positioned, MALFORMED};

#[test]
fn check_reports_the_witness() {
    let out = folcalc(&args("check nonintegrable.fol"), None);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("integrable: no\n"));
    assert!(out.stdout.contains("witness: (z)*dx^dy^dz\n"), "{}", out.stdout);
}

#[test]
fn unfold_e3_is_all_zero() {
    let out = folcalc(&args("unfold --form e3 --degrees 0..8 --json"), None);
    assert_eq!(out.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let slices = doc["slices"].as_array().unwrap();
    assert_eq!(slices.len(), 9);
    assert!(slices.iter().all(|s| s["dim_Unf"] == 0));
}

#[test]
fn critical_example() {
    let out = folcalc(&args("critical critical.fol --k 1 --json"), None);
    assert_eq!(out.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let row = &doc["critical_sets"][0];
    assert_eq!(row["ideal"], serde_json::json!(["y", "x"]));
    assert_eq!((row["dim"].as_i64(), row["holds"].as_bool()), (Some(1), Some(true)));
}

#[test]
fn exit_codes() {
    assert_eq!(folcalc(&args("unfold nonintegrable.fol"), None).code, 2);
    assert_eq!(folcalc(&args("stabcones morse.fol"), None).code, 2);
    assert_eq!(folcalc(&args("check morse.fol --projective-degree"), None).code, 2);
    assert_eq!(folcalc(&args("check missing.fol"), None).code, 1);
    assert_eq!(folcalc(&args("check morse.fol --form nothing"), None).code, 1);
    assert_eq!(folcalc(&args("frobnicate morse.fol"), None).code, 1);
    assert_eq!(folcalc(&args("check morse.fol --degrees 3"), None).code, 1);
    assert_eq!(folcalc(&args("--help"), None).code, 0);
    assert_eq!(folcalc(&args("critical morse.fol"), None).code, 1);
    let stdin = folcalc(&args("rank -"), Some("vars x y;\nlet w = x*d(y) - y*d(x);\n"));
    assert_eq!((stdin.code, stdin.stdout.contains("rank: 2")), (0, true));
}

#[test]
fn malformed_inputs_exit_one() {
    for text in MALFORMED {
        let out = folcalc(&args("check -"), Some(text));
        assert_eq!(out.code, 1, "{text}");
        assert!(positioned(&out.stderr), "{text}: {}", out.stderr);
    }
}

#[test]
fn text_and_json_agree() {
    let text = folcalc(&args("sing cusp.fol"), None).stdout;
    let json: serde_json::Value = serde_json::from_str(&folcalc(&args("sing cusp.fol --json"), None).stdout).unwrap();
    for key in json.as_object().unwrap().keys() {
        assert!(text.lines().any(|l| l.starts_with(&format!("{key}:"))), "{key}");
    }
}
