use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crs_core::error::{DEFAULT_ENUM_CAP, DEFAULT_GROUP_CAP};
use crs_core::Error;

mod commands;
mod output;

use output::{Format, Sink};

#[derive(Debug, Parser)]
#[command(name = "crs", version, about = "Exact and sampled laws of characteristic random subgroups")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Cap on objects visited by any exhaustive enumeration.
    #[arg(long, global = true, env = "CRS_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: u64,
    /// Cap on the order of permutation groups.
    #[arg(long, global = true, env = "CRS_GROUP_CAP", default_value_t = DEFAULT_GROUP_CAP)]
    pub group_cap: usize,
    /// Worker threads for Monte Carlo runs; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kernel-dimension distribution of a uniform κ × n matrix over F_q.
    Rankdist(commands::rankdist::RankdistArgs),
    /// CRS parameters, samplers, exact laws and limits.
    #[command(subcommand)]
    Crs(commands::crs::CrsCommand),
    /// Torsion measures on the 2-torus.
    #[command(subcommand)]
    Torus(commands::torus::TorusCommand),
    /// Free-group tools.
    #[command(subcommand)]
    Free(commands::free::FreeCommand),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) => 2,
        Error::ResourceLimit { .. } => 3,
        Error::Invariant(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = Sink::new(cli.run.output.clone());
    let result = match cli.command {
        Command::Rankdist(a) => commands::rankdist::run(&a, &cli.run, &mut sink),
        Command::Crs(c) => commands::crs::run(&c, &cli.run, &mut sink),
        Command::Torus(c) => commands::torus::run(&c, &cli.run, &mut sink),
        Command::Free(c) => commands::free::run(&c, &cli.run, &mut sink),
    };
    match result {
        Ok(()) => match sink.finish() {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("crs: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("crs: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
