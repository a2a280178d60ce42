//! Command-line front end for `weber-orr-core`: JSON run configs in, CSV
//! tables and JSON reports out.
//!
//! Exit codes: 0 when every point or case meets its tolerance, 1 on a
//! numeric failure, 2 on a config or input error.

pub mod config;
pub mod error;
pub mod mellin;
pub mod output;
pub mod transform;
pub mod verify;

use std::path::Path;

pub use error::CliError;

/// Result of a completed run; `pass == false` maps to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub summary: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Transform,
    SolveWeber,
    Verify,
    Mellin,
}

/// Load `config` and run `cmd`, writing reports into `out`.
pub fn run(cmd: Command, config: &Path, out: &Path) -> Result<Outcome, CliError> {
    match cmd {
        Command::Transform => {
            let (run, base) = config::load::<transform::TransformRun>(config)?;
            transform::run_transform(&run, &base, out)
        }
        Command::SolveWeber => {
            let (run, base) = config::load::<transform::SolveRun>(config)?;
            transform::run_solve(&run, &base, out)
        }
        Command::Verify => {
            let (run, _) = config::load::<verify::VerifyRun>(config)?;
            verify::run_verify(&run, out)
        }
        Command::Mellin => {
            let (run, base) = config::load::<mellin::MellinRun>(config)?;
            mellin::run_mellin(&run, &base, out)
        }
    }
}
