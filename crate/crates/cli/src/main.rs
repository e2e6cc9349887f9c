//! `masslin`: mass linearity checks, constructions and classification on
//! polytope documents.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use masslin::Rational;
use masslin_cli::args::{FamilyParams, Format, FunctionalArgs, SpaceFamily};
use masslin_cli::error::CliError;
use masslin_cli::{cmd, doc};

#[derive(Debug, Parser)]
#[command(name = "masslin", version, about = "Exact mass linearity on smooth lattice polytopes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the random points of the pre-filter. Verdicts never depend on it.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads for batch directories.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mass linearity report for a polytope document or a directory of them.
    Check {
        path: PathBuf,
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Random points tried by the pre-filter.
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Classify a mass linear pair on a 4-polytope.
    Classify {
        path: PathBuf,
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Include the blowdown trace and check that it replays.
        #[arg(long)]
        trace: bool,
    },
    /// Emit a polytope document for a named family.
    Construct {
        #[arg(value_enum)]
        family: masslin_cli::args::Family,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Blow up along a face given by facet labels or indices.
    Blowup {
        path: PathBuf,
        /// Facets cutting out the face, e.g. `F2,F4,G1`.
        #[arg(long)]
        face: String,
        /// Size of the cut; half the admissible bound by default.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<Rational>,
    },
    /// Blow down a facet.
    Blowdown {
        path: PathBuf,
        #[arg(long)]
        facet: String,
    },
    /// Skeleton barycenters and their pairings with H.
    Barycenters {
        path: PathBuf,
        #[command(flatten)]
        functional: FunctionalArgs,
    },
    /// Bases of the mass linear and inessential coefficient spaces.
    Mlspace {
        #[arg(value_enum)]
        family: SpaceFamily,
        #[command(flatten)]
        params: FamilyParams,
    },
}

fn run(cli: Cli) -> Result<(cmd::Output, bool), CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Check { path, functional, trials } => {
            if path.is_dir() {
                let entries = cmd::check_dir(&path, &functional, seed, trials, cli.jobs as usize)?;
                let failed = entries.iter().any(|e| e.error.is_some());
                Ok((cmd::Output::Batch(entries), failed))
            } else {
                Ok((cmd::Output::Check(cmd::check_file(&path, &functional, seed, trials)?), false))
            }
        }
        Command::Classify { path, functional, trace } => {
            Ok((cmd::Output::Classify(cmd::classify(&path, &functional, trace)?), false))
        }
        Command::Construct { family, params } => Ok((cmd::Output::Polytope(cmd::construct(family, &params)?), false)),
        Command::Blowup { path, face, eps } => Ok((cmd::Output::Polytope(cmd::blowup(&path, &face, eps)?), false)),
        Command::Blowdown { path, facet } => Ok((cmd::Output::Blowdown(cmd::blowdown(&path, &facet)?), false)),
        Command::Barycenters { path, functional } => {
            Ok((cmd::Output::Barycenters(cmd::barycenters(&path, &functional)?), false))
        }
        Command::Mlspace { family, params } => Ok((cmd::Output::MlSpace(cmd::mlspace(family, &params)?), false)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok((out, failed)) => {
            print!("{}", out.render(format));
            if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match format {
                Format::Json => eprint!("{}", doc::to_json(&serde_json::json!({ "error": e.to_doc() }))),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
