use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weber_orr::{run, Command};

#[derive(Parser)]
#[command(name = "weber-orr", version, about = "Weber and Weber-Orr transforms, the Weber equation solver and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Forward map, Weber-Orr pairs or forward+inverse round trip over an x-grid
    Transform(Args),
    /// Solve the Weber integral equation for g
    SolveWeber(Args),
    /// Run an identity suite over its case grid
    Verify(Args),
    /// Mellin image along a vertical line, optionally inverted back
    Mellin(Args),
}

#[derive(clap::Args)]
struct Args {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Directory for the CSV and JSON outputs
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Transform(a) => (Command::Transform, a),
        Cmd::SolveWeber(a) => (Command::SolveWeber, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Mellin(a) => (Command::Mellin, a),
    };
    match run(cmd, &args.config, &args.output_dir) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("tolerance not met; see {}", args.output_dir.display());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
