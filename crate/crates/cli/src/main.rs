use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use revnf_cli::{run, CliError, Command, RunOptions};

#[derive(Parser)]
#[command(
    name = "revnf",
    version,
    about = "Normal forms and complete transversals of polynomial vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON).
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Human-readable text instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete transversal per degree.
    Transversal(Common),
    /// Reduce the vector field to normal form.
    Normalform {
        #[command(flatten)]
        common: Common,
        /// Override degrees.max.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Decomposition and containment checks per degree.
    Verify(Common),
    /// Trace-formula vs. basis dimensions of the fixed slices.
    Dims(Common),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, common, max_degree) = match cli.command {
        Cmd::Transversal(c) => (Command::Transversal, c, None),
        Cmd::Normalform { common, max_degree } => (Command::Normalform, common, max_degree),
        Cmd::Verify(c) => (Command::Verify, c, None),
        Cmd::Dims(c) => (Command::Dims, c, None),
    };
    let opts = RunOptions {
        pretty: common.pretty,
        max_degree,
    };
    let result = fs::read_to_string(&common.input)
        .map_err(CliError::from)
        .and_then(|text| run(command, &text, &opts));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("revnf: {}: {e}", common.input.display());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &common.output {
        Some(path) => fs::write(path, &outcome.output),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("revnf: cannot write report: {e}");
        return ExitCode::from(1);
    }
    for f in &outcome.failures {
        eprintln!("revnf: invariant failure: {f}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
