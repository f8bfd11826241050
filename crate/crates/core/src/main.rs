use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cpjoin::cli::{run, RunConfig};

#[derive(Parser)]
#[command(name = "cpjoin", version, about = "Datalog evaluation over Leapfrog Triejoin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a program and print derived relations or a query result
    Run(RunConfig),
}

fn main() -> ExitCode {
    let Cli {
        command: Command::Run(cfg),
    } = Cli::parse();
    let out = run(&cfg);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.status as u8)
}
