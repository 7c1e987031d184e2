//! Command-line front end for the separable-ball library: bound tables,
//! certification campaigns, lemma Monte Carlo suites and state checks.

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

pub mod cli;
pub mod commands;
pub mod error;
pub mod report;

use cli::{Cli, Command, OutputArgs};
use error::CliError;
use report::CertReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("sepctl: SEPCTL_THREADS must be at least 1");
            return EXIT_USAGE;
        }
        // Fails only if a global pool already exists, e.g. when called twice in-process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sepctl: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: &Command) -> Result<i32, CliError> {
    let start = Instant::now();
    let (mut report, output) = match command {
        Command::Bounds { k_max, output } => (commands::bounds::run(*k_max)?, output),
        Command::Certify { run, inject_scale } => {
            let cfg = run.config(commands::certify::DEFAULT_TRIALS).map_err(CliError::Usage)?;
            (commands::certify::run(&cfg, *inject_scale)?, &run.output)
        }
        Command::CheckState { path, run } => {
            let cfg = run.config(commands::check_state::DEFAULT_TRIALS).map_err(CliError::Usage)?;
            (commands::check_state::run(path, &cfg)?, &run.output)
        }
        Command::Lemmas { run } => {
            let cfg = run.config(commands::lemmas::DEFAULT_TRIALS).map_err(CliError::Usage)?;
            (commands::lemmas::run(&cfg)?, &run.output)
        }
    };
    report.finish(start.elapsed().as_millis() as u64);
    emit(&report, output)?;
    Ok(if report.passed { EXIT_PASS } else { EXIT_VIOLATION })
}

fn emit(report: &CertReport, output: &OutputArgs) -> Result<(), CliError> {
    let body = report.render(output.format);
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
