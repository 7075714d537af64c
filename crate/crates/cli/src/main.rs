use std::process::ExitCode;

use clap::Parser;
use evobic_cli::args::{Cli, Command};
use evobic_cli::bench::cmd_bench;
use evobic_cli::commands::{cmd_eval, cmd_generate, cmd_run};
use evobic_cli::CliError;

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Run(args) => {
            let summary = cmd_run(&args)?;
            eprintln!(
                "{} generations, {} after {:.2}s",
                summary.report.generations,
                summary.report.termination,
                summary.report.wall_time_seconds
            );
        }
        Command::Generate(args) => {
            let manifest = cmd_generate(&args)?;
            eprintln!("wrote {} datasets to {}", manifest.datasets.len(), args.out.display());
        }
        Command::Eval(args) => {
            let outcome = cmd_eval(&args)?;
            println!("{}", outcome.line);
            if outcome.undefined {
                eprintln!("error: metric undefined (both bicluster sets empty or the relevant side empty)");
                return Ok(3);
            }
        }
        Command::Bench(args) => {
            let records = cmd_bench(&args)?;
            eprintln!("{} datasets, results in {}", records.len(), args.out.display());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
