//! Command-line front end: workspace files, subcommands and reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
//! validation error, 3 budget exceeded.

mod args;
mod commands;
mod report;
mod spec;
mod workspace;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{ClassifyArgs, Cli, Command, PairArgs};
pub use commands::{run_command, Settings};
pub use report::{Artifact, CheckEntry, Report};
pub use spec::{parse_json, parse_text, AlgebraDef, ComponentDef, FamilyDef, MapDef, MonadDef, MonoidDef, SemiringDef, SetDef, WorkspaceSpec};
pub use workspace::{LawValue, MonadValue, Workspace};

use crate::error::Error;
use crate::finset::Budget;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

/// Parses `args`, runs one command and writes its reports. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_PASS;
        }
    };
    let budget = Budget::new(cli.budget as u128);
    let outcome = Workspace::load(&cli.workspaces, budget).and_then(|ws| {
        run_command(
            &ws,
            &cli.command,
            Settings {
                budget,
                max_size: cli.max_size,
            },
        )
    });
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout {
        let _ = stdout.write_all(report.to_json().as_bytes());
    } else {
        let _ = stdout.write_all(report.to_text().as_bytes());
        if let Some(path) = &cli.json {
            if let Err(e) = std::fs::write(path, report.to_json()) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
    }
    if report.failed() {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}
