use std::io;
use std::process::ExitCode;

use log::LevelFilter;

fn main() -> ExitCode {
    let level = match std::env::var("AFA_LOG").as_deref() {
        Err(_) | Ok("quiet") => LevelFilter::Off,
        Ok("info") => LevelFilter::Info,
        Ok("debug") => LevelFilter::Debug,
        Ok(other) => {
            eprintln!("error: AFA_LOG must be quiet, info or debug, not {other:?}");
            return ExitCode::from(afa_cli::EXIT_INPUT_ERROR);
        }
    };
    env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).init();
    let code = afa_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
