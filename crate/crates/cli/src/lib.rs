//! The `afa` command line: encode meaning tables, verify encodings, and
//! inspect the graphs involved.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use afa_core::eqsolver::{solve, EquationSystem};
use afa_core::langmodel::{LanguageSpec, Str};
use afa_core::mu_encoder::{apply, encode_with, MuEncoding, Scheme};
use afa_core::relsem::{parse_clause, sv};
use afa_core::report::Report;
use afa_core::wf_encoder::verify_wf;
use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use percent_encoding::{utf8_percent_encode, NON_ALPHANUMERIC};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "afa", version, about = "Compositional hyperset encodings of finite meaning tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a spec and write the bundle.
    Encode {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an encoding and the well-founded counterpart.
    Verify {
        /// A spec or a bundle.
        input: PathBuf,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
    },
    /// Apply μ(s) to μ(t) and compare with μ(s·t).
    Apply { bundle: PathBuf, s: String, t: String },
    /// Read a meaning back out of μ(s).
    Recover { bundle: PathBuf, s: String },
    /// List synonym pairs.
    Synonyms { spec: PathBuf },
    /// Check the well-founded encoding only.
    Westerstahl { spec: PathBuf },
    /// Solve an equation file, one graph file per variable.
    Solve {
        equations: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List the scope readings of a clause.
    Scopes { clause: PathBuf },
    /// Render μ(s) in Graphviz format.
    Dot { bundle: PathBuf, s: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Bare,
    Profiled,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Bare => Scheme::Bare,
            SchemeArg::Profiled => Scheme::ContextProfiled,
        }
    }
}

type Outcome = Result<u8, String>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            let _ = writeln!(stderr, "{first}");
            return EXIT_INPUT_ERROR;
        }
    };
    let mut out = Vec::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => {
            let _ = stdout.write_all(&out);
            code
        }
        Err(message) => {
            let _ = writeln!(stderr, "error: {}", message.replace('\n', " "));
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &mut Vec<u8>) -> Outcome {
    match command {
        Command::Encode { spec, output } => {
            let enc = encode_with(&read_spec(&spec)?, Scheme::default()).map_err(err)?;
            let bundle = enc.to_bundle();
            match output {
                Some(path) => {
                    fs::write(&path, bundle).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    info!("wrote {}", path.display());
                }
                None => out.extend_from_slice(bundle.as_bytes()),
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, scheme } => {
            let text = read(&input)?;
            let enc = if is_bundle(&text) {
                if scheme.is_some() {
                    return Err("--scheme applies to spec files only".into());
                }
                MuEncoding::from_bundle(&text).map_err(err)?
            } else {
                let spec = LanguageSpec::parse_spec(&text).map_err(err)?;
                encode_with(&spec, scheme.map(Scheme::from).unwrap_or_default()).map_err(err)?
            };
            info!("verifying {} strings with the {} scheme", enc.spec().len(), enc.scheme().name());
            let mut report = enc.verify();
            report.append(verify_wf(enc.spec()));
            Ok(emit_report(&report, out))
        }
        Command::Apply { bundle, s, t } => {
            let enc = read_bundle(&bundle)?;
            let (s, t) = (parse_str(&s)?, parse_str(&t)?);
            let result = apply(enc.mu(&s).map_err(err)?, enc.mu(&t).map_err(err)?).map_err(err)?;
            writeln!(out, "{}", result.minimize().serialize_graph()).expect("in memory");
            let st = s.concat(&t);
            match enc.mu(&st) {
                Ok(expected) if result.bisimilar(expected) => {
                    writeln!(out, "verdict PASS: apply(μ({s}), μ({t})) ≅ μ({st})").expect("in memory");
                    Ok(EXIT_OK)
                }
                Ok(_) => {
                    writeln!(out, "verdict FAIL: apply(μ({s}), μ({t})) differs from μ({st})").expect("in memory");
                    Ok(EXIT_CHECK_FAILED)
                }
                Err(_) => {
                    writeln!(out, "verdict NOTE: {st} is not in the language").expect("in memory");
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Recover { bundle, s } => {
            let enc = read_bundle(&bundle)?;
            let m = enc.recover(&parse_str(&s)?).map_err(err)?;
            writeln!(out, "{m}").expect("in memory");
            Ok(EXIT_OK)
        }
        Command::Synonyms { spec } => {
            for (a, b) in read_spec(&spec)?.synonym_pairs() {
                writeln!(out, "{a} ~ {b}").expect("in memory");
            }
            Ok(EXIT_OK)
        }
        Command::Westerstahl { spec } => Ok(emit_report(&verify_wf(&read_spec(&spec)?), out)),
        Command::Solve { equations, output } => {
            let sys = EquationSystem::from_json(&read(&equations)?).map_err(err)?;
            let sol = solve(&sys).map_err(err)?;
            fs::create_dir_all(&output).map_err(|e| format!("cannot create {}: {e}", output.display()))?;
            for (var, graph) in sol.assignment() {
                let name = format!("{}.json", utf8_percent_encode(var, NON_ALPHANUMERIC));
                let path = output.join(&name);
                fs::write(&path, graph.minimize().serialize_graph() + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                debug!("wrote {}", path.display());
                writeln!(out, "{var} {name}").expect("in memory");
            }
            Ok(EXIT_OK)
        }
        Command::Scopes { clause } => {
            let clause = parse_clause(&read(&clause)?).map_err(err)?;
            for r in sv(&clause).rendered() {
                writeln!(out, "{r}").expect("in memory");
            }
            Ok(EXIT_OK)
        }
        Command::Dot { bundle, s } => {
            let enc = read_bundle(&bundle)?;
            let g = enc.mu(&parse_str(&s)?).map_err(err)?;
            out.extend_from_slice(g.minimize().to_dot().as_bytes());
            Ok(EXIT_OK)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn emit_report(report: &Report, out: &mut Vec<u8>) -> u8 {
    write!(out, "{report}").expect("in memory");
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_spec(path: &Path) -> Result<LanguageSpec, String> {
    LanguageSpec::parse_spec(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_bundle(path: &Path) -> Result<MuEncoding, String> {
    MuEncoding::from_bundle(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn is_bundle(text: &str) -> bool {
    matches!(serde_json::from_str::<serde_json::Value>(text), Ok(serde_json::Value::Object(m)) if m.contains_key("graphs"))
}

fn parse_str(text: &str) -> Result<Str, String> {
    Str::parse(text).map_err(|e| format!("bad string {text:?}: {e}"))
}
