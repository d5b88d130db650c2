//! Golden transcripts for every subcommand. Regenerate with `UPDATE_GOLDEN=1`.

mod common;

use std::fs;

use common::{golden_path, run_case, CASES, FIXTURES};

#[test]
fn golden_transcripts() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for c in CASES {
        let first = run_case(c);
        let second = run_case(c);
        assert_eq!(first.text, second.text, "{} is not deterministic", c.name);
        let path = golden_path(c);
        if update {
            fs::write(&path, &first.text).unwrap();
        } else if fs::read_to_string(&path).ok().as_deref() != Some(first.text.as_str()) {
            mismatches.push(c.name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn exit_code_contract() {
    let code = |name: &str| run_case(CASES.iter().find(|c| c.name == name).unwrap()).code;
    for ok in ["verify_e1", "verify_e2", "verify_e3", "verify_bundle_e1", "apply_e2_c_b", "scopes_clause2"] {
        assert_eq!(code(ok), 0, "{ok}");
    }
    for failed in ["verify_corrupted", "verify_e2_bare"] {
        assert_eq!(code(failed), 1, "{failed}");
    }
    for bad in ["verify_missing_meaning", "apply_e2_a_c", "bad_subcommand"] {
        assert_eq!(code(bad), 2, "{bad}");
    }
}

#[test]
fn diagnostics_are_single_lines() {
    for c in CASES {
        let t = run_case(c);
        let stderr = t.text.split("--- stderr\n").nth(1).unwrap();
        let stderr = stderr.split("--- file").next().unwrap();
        if t.code == 2 {
            assert_eq!(stderr.lines().count(), 1, "{}: {stderr:?}", c.name);
        } else {
            assert!(stderr.is_empty(), "{}: {stderr:?}", c.name);
        }
    }
    let missing = run_case(CASES.iter().find(|c| c.name == "verify_missing_meaning").unwrap());
    assert!(missing.text.contains("c,a"));
}

#[test]
fn encode_reproduces_bundle_fixtures() {
    for e in ["e1", "e2", "e3"] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("bundle.json");
        let spec = format!("{FIXTURES}/{e}.json");
        let args = ["afa", "encode", &spec, "-o", out.to_str().unwrap()];
        assert_eq!(afa_cli::run(args, &mut Vec::new(), &mut Vec::new()), 0);
        let expected = fs::read_to_string(format!("{FIXTURES}/{e}.bundle.json")).unwrap();
        assert_eq!(fs::read_to_string(&out).unwrap(), expected, "{e}");
    }
}

#[test]
fn scheme_flag_rejected_for_bundles() {
    let bundle = format!("{FIXTURES}/e1.bundle.json");
    let mut err = Vec::new();
    let code = afa_cli::run(["afa", "verify", &bundle, "--scheme", "bare"], &mut Vec::new(), &mut err);
    assert_eq!(code, 2);
    assert!(String::from_utf8(err).unwrap().contains("--scheme"));
}
