//! `qsym`: inspect graded-commutative algebras from the command line.
//!
//! Exit status is 0 on success, 1 when a verification suite fails and 2 for
//! usage, parse or model errors.

mod commands;
mod model;
mod word;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use commands::{PartitionFilter, Suite};
use model::ModelSpec;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid model {path}: {message}")]
    ModelJson { path: String, message: String },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] qsym_core::AlgebraError),
    #[error(transparent)]
    Bicharacter(#[from] qsym_core::BicharacterError),
    #[error(transparent)]
    Grading(#[from] qsym_core::GradingError),
}

#[derive(Debug, Parser)]
#[command(
    name = "qsym",
    version,
    about = "Graded-commutative algebras over bicharacters"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ModelArgs {
    /// Flux model with N fluxes and n particles (n defaults to 1).
    #[arg(long, num_args = 1..=2, value_names = ["N", "n"])]
    flux: Option<Vec<usize>>,
    /// JSON model file.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, CliError> {
        match (&self.flux, &self.model) {
            (Some(v), _) => Ok(ModelSpec::Flux {
                n_flux: v[0],
                n_particles: v.get(1).copied().unwrap_or(1),
            }),
            (None, Some(path)) => ModelSpec::from_file(path),
            (None, None) => unreachable!("clap requires one model source"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every generator-pair relation and the nilpotency of each generator.
    Relations {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Enumerate quasiparticle/quasihole partitions.
    Partitions {
        #[command(flatten)]
        model: ModelArgs,
        /// Only list partitions allowed by the exclusion principle.
        #[arg(long)]
        admissible_only: bool,
        /// Only list partitions with exactly K quasiparticles.
        #[arg(long, value_name = "K")]
        degree: Option<usize>,
        /// Enumerate even when the candidate count exceeds the safety cap.
        #[arg(long)]
        force: bool,
    },
    /// Reduce a word such as "T2 T1" or "T2^1 T1^2" to normal form.
    NormalForm {
        #[command(flatten)]
        model: ModelArgs,
        /// Generator tokens; several arguments are joined with spaces.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Seed for sampled checks on large groups.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest monomial degree for the graded-commutativity suite.
        #[arg(long, value_name = "K", default_value_t = 3)]
        degree: usize,
    },
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    match cli.command {
        Command::Relations { model } => {
            let model = model.spec()?.build()?;
            commands::relations(&model, cli.json)
        }
        Command::Partitions {
            model,
            admissible_only,
            degree,
            force,
        } => {
            let model = model.spec()?.build()?;
            let filter = PartitionFilter {
                admissible_only,
                degree,
                force,
            };
            commands::partitions(&model, &filter, cli.json)
        }
        Command::NormalForm { model, word } => {
            let model = model.spec()?.build()?;
            commands::normal_form(&model, &word.join(" "), cli.json)
        }
        Command::Verify {
            model,
            suite,
            seed,
            degree,
        } => {
            let model = model.spec()?.build()?;
            commands::verify(&model, suite, seed, degree, cli.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes());
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(
                e,
                CliError::Algebra(qsym_core::AlgebraError::EnumerationCap { .. })
            ) {
                eprintln!("hint: rerun with --force");
            }
            ExitCode::from(2)
        }
    }
}
