use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use gitplane_cli::args::{Action, Cli};
use gitplane_cli::{replay_detailed, run, CliError, Report};

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}

fn execute(action: Action) -> Result<(), CliError> {
    match action {
        Action::Analyze(request) => {
            let report = run(&request)?;
            // a report that fails its own replay is a bug, not a verdict
            let check = replay_detailed(&report);
            if !check.passed {
                return Err(CliError::Invariant(check.failures.join("; ")));
            }
            emit(&report.to_json(), request.output.as_deref())
        }
        Action::Replay { input, output } => {
            let path = input.ok_or_else(|| CliError::Input("replay needs --in <report>".into()))?;
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let report: Report = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{} is not a report: {e}", path.display())))?;
            let outcome = replay_detailed(&report);
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            let mut json = serde_json::to_string_pretty(&outcome).expect("outcome serialises");
            json.push('\n');
            emit(&json, output.as_deref())?;
            if outcome.passed {
                Ok(())
            } else {
                Err(CliError::Invariant("replay failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.into_action()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gitplane: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
