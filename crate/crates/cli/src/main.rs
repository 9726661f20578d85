//! `elevatum`: build elevated polyhedra, check the six-apex claim, solve for
//! the coplanarizing height and analyse resting contacts.
//!
//! Exit codes: 0 decided, 1 I/O or internal error, 2 usage error,
//! 3 undecided at maximum precision, 4 infeasible configuration.

mod args;
mod run;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            eprintln!("elevatum: {}", line.trim_start_matches("error: "));
            return ExitCode::from(run::USAGE);
        }
    };
    match run::dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("elevatum: {e}");
            ExitCode::from(e.code())
        }
    }
}
