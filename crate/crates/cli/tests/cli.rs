use std::path::PathBuf;
use std::process::Command;

use catlang::{Options, Status};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_catlang"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn check_passes_lawful_files() {
    for f in [
        "z2.cat",
        "z2_presented.cat",
        "one.cat",
        "two_reps.cat",
        "galois.cat",
        "iso_pair.cat",
    ] {
        let (code, out, err) = run(&["check", &fixture(f)]);
        assert_eq!(code, 0, "{f}: {out}{err}");
    }
}

#[test]
fn law_failure_exits_1_with_a_localized_report() {
    let (code, out, _) = run(&["check", &fixture("broken.cat")]);
    assert_eq!(code, 1);
    assert!(out.contains("totality") && out.contains("g.g"), "{out}");
}

#[test]
fn input_errors_exit_2_on_stderr() {
    let (code, out, err) = run(&["check", &fixture("syntax_error.cat")]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && err.contains("4:7"), "{err}");
    let (code, _, err) = run(&["check", &fixture("bad_relation.cat")]);
    assert_eq!(code, 2);
    assert!(err.contains("7:5"), "{err}");
    let (code, _, err) = run(&["check", &fixture("free_loop.cat")]);
    assert_eq!(code, 2);
    assert!(err.contains("saturation"), "{err}");
    assert_eq!(run(&["check", "/nonexistent/x.cat"]).0, 2);
}

#[test]
fn raising_the_bound_does_not_rescue_a_free_loop() {
    let (code, _, _) = run(&[
        "--max-arrows",
        "2000",
        "--max-word-len",
        "20",
        "check",
        &fixture("free_loop.cat"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run(&["--json", "check", &fixture("broken.cat")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "violated");
    assert!(!v["report"]["violations"].as_array().unwrap().is_empty());
    let (code, out, _) = run(&["--json", "check", &fixture("syntax_error.cat")]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "input-error");
}

#[test]
fn every_subcommand_runs() {
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (vec!["op-test".into(), fixture("galois.cat")], 0, ""),
        (vec!["limits".into(), fixture("cospan_limit.cat")], 0, ""),
        (
            vec![
                "limit".into(),
                fixture("cospan_limit.cat"),
                "--diagram".into(),
                "D".into(),
            ],
            0,
            "constructive == oracle up to iso",
        ),
        (
            vec![
                "yoneda".into(),
                fixture("z2.cat"),
                "--object".into(),
                "*".into(),
            ],
            0,
            "",
        ),
        (vec!["monoidal-check".into(), fixture("cyclic3.cat")], 0, ""),
        (
            vec![
                "adjoint-check".into(),
                fixture("galois.cat"),
                "--left".into(),
                "F".into(),
                "--right".into(),
                "G".into(),
            ],
            0,
            "",
        ),
        (
            vec![
                "adjoint-check".into(),
                fixture("iso_pair.cat"),
                "--left".into(),
                "Pick".into(),
                "--right".into(),
                "Collapse".into(),
            ],
            0,
            "equivalence",
        ),
        (vec!["explain".into(), fixture("two_reps.cat")], 0, ""),
        (
            vec![
                "limit".into(),
                fixture("cospan_limit.cat"),
                "--diagram".into(),
                "Nope".into(),
            ],
            2,
            "",
        ),
        (
            vec![
                "yoneda".into(),
                fixture("z2.cat"),
                "--object".into(),
                "nope".into(),
            ],
            2,
            "",
        ),
    ];
    for (args, code, needle) in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, out, err) = run(&argv);
        assert_eq!(got, code, "{args:?}\n{out}{err}");
        assert!(out.contains(needle), "{args:?}\n{out}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn garbage_never_panics(text in "[a-z:.=~>\\- \n\"#*]{0,80}") {
        let outcome = catlang::check(&text, &Options::default());
        prop_assert!(matches!(outcome.status, Status::InputError | Status::Passed | Status::Violated));
        prop_assert!(outcome.exit_code() <= 2);
    }

    #[test]
    fn near_misses_of_valid_text_never_panic(cut in 0usize..120, junk in "[a-z.:=\"]{0,3}") {
        let valid = std::fs::read_to_string(fixture("z2.cat")).unwrap();
        let cut = valid.char_indices().map(|(i, _)| i).filter(|&i| i <= cut).last().unwrap_or(0);
        let text = format!("{}{junk}{}", &valid[..cut], &valid[cut..]);
        let outcome = catlang::check(&text, &Options::default());
        prop_assert!(outcome.exit_code() <= 2);
    }
}
