#![allow(dead_code)]

pub mod enumeration;

use std::fs;
use std::path::{Path, PathBuf};

pub const FIXTURES: &str = "tests/fixtures";
pub const GOLDEN: &str = "tests/golden";

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// Passed as `-o <tmp>` and folded into the transcript.
    pub output_dir: bool,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, output_dir: false }
}

pub const CASES: &[Case] = &[
    case("encode_e1", &["encode", "e1.json"]),
    case("encode_e2", &["encode", "e2.json"]),
    case("encode_e3", &["encode", "e3.json"]),
    case("verify_e1", &["verify", "e1.json"]),
    case("verify_e2", &["verify", "e2.json"]),
    case("verify_e3", &["verify", "e3.json"]),
    case("verify_e2_bare", &["verify", "e2.json", "--scheme", "bare"]),
    case("verify_bundle_e1", &["verify", "e1.bundle.json"]),
    case("verify_bundle_e2", &["verify", "e2.bundle.json"]),
    case("verify_bundle_e3", &["verify", "e3.bundle.json"]),
    case("verify_corrupted", &["verify", "corrupted_e1.bundle.json"]),
    case("verify_missing_meaning", &["verify", "missing_meaning.json"]),
    case("apply_e1_c_a", &["apply", "e1.bundle.json", "c", "a"]),
    case("apply_e2_c_b", &["apply", "e2.bundle.json", "c", "b"]),
    case("apply_e3_a_a", &["apply", "e3.bundle.json", "a", "a"]),
    case("apply_e2_a_c", &["apply", "e2.bundle.json", "a", "c"]),
    case("recover_e1_a", &["recover", "e1.bundle.json", "a"]),
    case("recover_e2_cb", &["recover", "e2.bundle.json", "c,b"]),
    case("recover_e3_aa", &["recover", "e3.bundle.json", "a,a"]),
    case("synonyms_e1", &["synonyms", "e1.json"]),
    case("synonyms_e2", &["synonyms", "e2.json"]),
    case("synonyms_e3", &["synonyms", "e3.json"]),
    case("westerstahl_e1", &["westerstahl", "e1.json"]),
    case("westerstahl_e2", &["westerstahl", "e2.json"]),
    case("westerstahl_e3", &["westerstahl", "e3.json"]),
    Case { name: "solve_self_application", args: &["solve", "self_application.json"], output_dir: true },
    case("scopes_clause1", &["scopes", "clause1.json"]),
    case("scopes_clause2", &["scopes", "clause2.json"]),
    case("scopes_clause3", &["scopes", "clause3.json"]),
    case("dot_e1_a", &["dot", "e1.bundle.json", "a"]),
    case("dot_e3_a", &["dot", "e3.bundle.json", "a"]),
    case("bad_subcommand", &["frobnicate"]),
];

fn arg(a: &str) -> String {
    let p = Path::new(FIXTURES).join(a);
    if p.exists() {
        p.to_string_lossy().into_owned()
    } else {
        a.to_string()
    }
}

pub struct Transcript {
    pub code: u8,
    pub text: String,
}

/// Runs a case in process and renders exit code, streams and written files.
pub fn run_case(c: &Case) -> Transcript {
    let tmp = tempfile::tempdir().unwrap();
    let mut args: Vec<String> = vec!["afa".into()];
    args.extend(c.args.iter().map(|a| arg(a)));
    if c.output_dir {
        args.push("-o".into());
        args.push(tmp.path().to_string_lossy().into_owned());
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = afa_cli::run(&args, &mut out, &mut err);
    let mut text = format!(
        "exit: {code}\n--- stdout\n{}--- stderr\n{}",
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap()
    );
    if c.output_dir {
        let mut files: Vec<PathBuf> = fs::read_dir(tmp.path()).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        for f in files {
            let name = f.file_name().unwrap().to_string_lossy().into_owned();
            text.push_str(&format!("--- file {name}\n{}", fs::read_to_string(&f).unwrap()));
        }
    }
    Transcript { code, text }
}

pub fn golden_path(c: &Case) -> PathBuf {
    Path::new(GOLDEN).join(format!("{}.txt", c.name))
}
