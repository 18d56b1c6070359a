//! Command-line front end for `centpoly`: verification runs with streamed
//! JSON, CSV or text reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod sampling;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use config::{Command, RunConfig};
use report::Report;

/// Exit status: every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status: some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status: the run could not complete.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug)]
pub enum RunError {
    Core(centpoly::Error),
    Io(io::Error),
}

impl RunError {
    fn kind(&self) -> &'static str {
        match self {
            RunError::Core(centpoly::Error::BudgetExceeded(_)) => "budget_exceeded",
            RunError::Core(_) => "error",
            RunError::Io(_) => "io",
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<centpoly::Error> for RunError {
    fn from(e: centpoly::Error) -> Self {
        RunError::Core(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

/// Runs one command, writing the report to `out`; returns the exit status.
pub fn run_to(cfg: &RunConfig, out: Box<dyn Write>) -> i32 {
    let mut report = match Report::new(cfg, out) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let result = match cfg.command {
        Command::Grassmann => commands::cmd_grassmann(cfg, &mut report),
        Command::Matrix => commands::cmd_matrix(cfg, &mut report),
        Command::Regev => commands::cmd_regev(cfg, &mut report),
        Command::Growth => commands::cmd_growth(cfg, &mut report),
    };
    match result {
        Ok(()) => match report.finish() {
            Ok(true) => EXIT_PASS,
            Ok(false) => EXIT_FAIL,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            let _ = report.abort(e.kind(), &e.to_string());
            EXIT_ERROR
        }
    }
}

pub fn run(cfg: &RunConfig) -> i32 {
    let out: Box<dyn Write> = match &cfg.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return EXIT_ERROR;
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    run_to(cfg, out)
}
