use std::path::PathBuf;
use std::process::Command;

use bimorph::cli::{parse_text, run, Workspace};
use bimorph::{Budget, Error};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bimorph").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let (code, out, err) = invoke(&all);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn artifact<'a>(report: &'a Value, name: &str) -> &'a Value {
    &report["artifacts"].as_array().unwrap().iter().find(|a| a["name"] == name).unwrap()["value"]
}

#[test]
fn bundled_f2_fixture_defines_one_semiring() {
    let ws = Workspace::load(&[fixture("f2.ws")], Budget::default()).unwrap();
    assert_eq!(ws.summary()[0], ("semirings", 1));
    assert_eq!(ws.semiring("f2").unwrap().size(), 2);
}

#[test]
fn empty_file_is_an_empty_workspace() {
    let dir = std::env::temp_dir().join("bimorph-empty.ws");
    std::fs::write(&dir, "").unwrap();
    assert!(Workspace::load(&[dir], Budget::default()).unwrap().is_empty());
    assert!(parse_text("e.ws", "").unwrap().is_empty());
}

#[test]
fn non_distributive_fixture_is_rejected() {
    match Workspace::load(&[fixture("nondistributive.ws")], Budget::default()) {
        Err(Error::Validation { definition, axiom, witness }) => {
            assert_eq!(definition, "broken");
            assert!(axiom.contains("distributivity"), "{axiom}");
            assert_eq!(witness.matches(',').count(), 2, "a witness triple: {witness}");
        }
        other => panic!("{other:?}"),
    }
    let (code, _, err) = invoke(&["--workspace", &fixture("nondistributive.ws"), "check-monad", "--monad", "identity"]);
    assert_eq!(code, 2);
    assert!(err.contains("distributivity"));
}

#[test]
fn commutativity_of_f2() {
    let (code, report) = json(&[
        "--workspace",
        &fixture("f2.ws"),
        "check-commutative",
        "--monad",
        "semimodule(f2)",
        "--max-size",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(*artifact(&report, "commutative"), Value::Bool(true));
}

#[test]
fn non_commutative_semiring_gives_a_witness() {
    let (code, report) = json(&["check-commutative", "--monad", "semimodule(tri)"]);
    assert_eq!(code, 1);
    assert_eq!(*artifact(&report, "commutative"), Value::Bool(false));
    let failed = report["checks"].as_array().unwrap().iter().find(|c| c["verdict"] == "fail").unwrap();
    assert!(failed["witness"]["element"].is_string());
}

#[test]
fn tensor_of_lines() {
    let (code, report) = json(&["tensor", "--monad", "semimodule(f2)", "--left", "free(1)", "--right", "free(1)"]);
    assert_eq!(code, 0);
    assert_eq!(*artifact(&report, "carrier size"), Value::from(2));
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["name"] == "universal property" && c["verdict"] == "pass"));
}

#[test]
fn identity_monad_passes_everything() {
    let (code, out, _) = invoke(&["check-monad", "--monad", "identity", "--max-size", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains(" 0 failed"));
}

#[test]
fn every_verdict_has_scope_or_witness() {
    let laws = fixture("laws.ws");
    for args in [
        vec!["check-kleisli-law", "--law", "dead_dst"],
        vec!["check-em-law", "--law", "bad_sigma"],
        vec!["check-monad", "--monad", "maybe"],
    ] {
        let mut all = vec!["--workspace", laws.as_str()];
        all.extend(args);
        let (_, report) = json(&all);
        for c in report["checks"].as_array().unwrap() {
            assert!(c["paper_anchor"].is_string());
            assert!(c.get("scope").is_some() || c.get("witness").is_some(), "{c}");
        }
    }
}

#[test]
fn law_fixtures() {
    let laws = fixture("laws.ws");
    let cases: &[(&[&str], i32)] = &[
        (&["check-kleisli-law", "--law", "dst2"], 0),
        (&["check-kleisli-law", "--law", "dst_prime2"], 0),
        (&["check-kleisli-law", "--law", "cop"], 0),
        (&["check-kleisli-law", "--law", "dead_dst"], 1),
        (&["check-em-law", "--law", "sigma"], 0),
        (&["check-em-law", "--law", "bad_sigma"], 1),
        (&["check-morphism", "--sigma", "sigma"], 0),
        (&["check-morphism", "--sigma", "maybe_to(bool)"], 0),
        (&["check-morphism", "--sigma", "bad_sigma"], 1),
        (&["lift", "--law", "dst2", "--max-size", "1"], 0),
        (&["classify", "--law", "dst2", "--algebras", "line,plane"], 0),
        (&["coproduct-lift", "--monad", "semimodule(bool)", "--left", "bits", "--right", "bits"], 0),
        (
            &[
                "verify-universal",
                "--monad",
                "semimodule(f2)",
                "--left",
                "line",
                "--right",
                "line",
                "--target",
                "plane",
            ],
            0,
        ),
        (
            &[
                "check-bimorphism",
                "--monad",
                "semimodule(f2)",
                "--left",
                "line",
                "--right",
                "line",
                "--target",
                "line",
                "--map",
                "times",
            ],
            0,
        ),
        (
            &[
                "check-bimorphism",
                "--monad",
                "semimodule(f2)",
                "--left",
                "line",
                "--right",
                "line",
                "--target",
                "line",
                "--map",
                "first",
            ],
            1,
        ),
        (
            &[
                "check-bimorphism",
                "--law",
                "dst2",
                "--algebras",
                "line,line",
                "--target",
                "line",
                "--map",
                "times",
            ],
            0,
        ),
        (&["check-strength", "--monad", "writer(s3)"], 0),
        (&["adjoint-lift", "--sigma", "sigma", "--max-size", "1", "--target-max-size", "3"], 0),
        (&["check-em-law", "--law", "dst2"], 2),
        (&["classify", "--law", "dst2", "--algebras", "line"], 2),
        (&["check-monad", "--monad", "nope"], 2),
    ];
    for (args, expected) in cases {
        let mut all = vec!["--workspace", laws.as_str()];
        all.extend(args.iter().copied());
        let (code, out, err) = invoke(&all);
        assert_eq!(code, *expected, "{args:?}\n{out}\n{err}");
    }
}

#[test]
fn bilinearity_report_names_the_failing_component() {
    let (_, report) = json(&[
        "--workspace",
        &fixture("laws.ws"),
        "check-bimorphism",
        "--monad",
        "semimodule(f2)",
        "--left",
        "line",
        "--right",
        "line",
        "--target",
        "line",
        "--map",
        "first",
    ]);
    let verdict = |name: &str| report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["verdict"].clone();
    assert_eq!(verdict("linear in the first argument"), "pass");
    assert_eq!(verdict("linear in the second argument"), "fail");
    assert_eq!(verdict("bilinear iff both components"), "pass");
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--workspace",
        &fixture("laws.ws"),
        "classify",
        "--law",
        "dst2",
        "--algebras",
        "line,plane",
        "--json",
        "-",
    ];
    assert_eq!(invoke(&args).1, invoke(&args).1);
}

#[test]
fn json_report_file() {
    let path = std::env::temp_dir().join("bimorph-report.json");
    let (code, text, _) = invoke(&["check-monad", "--monad", "maybe", "--max-size", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.starts_with("check-monad"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["command", "inputs", "checks", "artifacts"] {
        assert!(report.get(key).is_some(), "{key}");
    }
}

#[test]
fn json_workspaces() {
    let path = std::env::temp_dir().join("bimorph-ws.json");
    std::fs::write(&path, r#"{"monads": [{"name": "m", "expr": "writer(z2)"}]}"#).unwrap();
    let (code, _, err) = invoke(&["--workspace", path.to_str().unwrap(), "check-monad", "--monad", "m", "--max-size", "1"]);
    assert_eq!(code, 0, "{err}");
    std::fs::write(&path, r#"{"monads": [}"#).unwrap();
    let (code, _, err) = invoke(&["--workspace", path.to_str().unwrap(), "check-monad", "--monad", "m"]);
    assert_eq!(code, 2);
    assert!(err.contains("bimorph-ws.json:1:"), "{err}");
}

#[test]
fn budget_overruns_exit_with_three() {
    let (code, _, err) = invoke(&[
        "--budget",
        "10",
        "tensor",
        "--monad",
        "semimodule(f2)",
        "--left",
        "free(2)",
        "--right",
        "free(2)",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"));
}

#[test]
fn budget_flag_overrides_the_environment() {
    let bin = env!("CARGO_BIN_EXE_bimorph");
    let args = ["tensor", "--monad", "semimodule(f2)", "--left", "free(1)", "--right", "free(1)"];
    let status = Command::new(bin).args(args).env("BIMORPH_BUDGET", "10").output().unwrap().status;
    assert_eq!(status.code(), Some(3));
    let status = Command::new(bin)
        .args(args)
        .args(["--budget", "1000000"])
        .env("BIMORPH_BUDGET", "10")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["no-such-command"]).0, 2);
    assert_eq!(invoke(&["tensor", "--monad", "semimodule(f2)"]).0, 2);
    assert_eq!(invoke(&["--workspace", "/nonexistent/x.ws", "check-monad", "--monad", "identity"]).0, 2);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("adjoint-lift"));
}
