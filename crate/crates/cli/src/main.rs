use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Number theoretic Hilbert transforms: verify keys, transform blocks,
/// search for solutions, find eigensequences and scramble files.
///
/// Exit status: 0 success, 1 domain failure (invalid spec, frame or
/// verdict), 2 usage or I/O failure.
#[derive(Debug, Parser)]
#[command(name = "nht", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Spec document: {"size": 2n, "modulus": m, "coefficients": [...]}
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Permit zero coefficients
    #[arg(long)]
    allow_zero: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the orthogonality conditions and N N^T = I
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Apply the transform (or its inverse) to a vector file
    Transform {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma- or whitespace-separated integers
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long)]
        inverse: bool,
    },
    /// Enumerate or sample valid coefficient vectors
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
    Search {
        /// Transform size 2n (even)
        #[arg(long)]
        size: u64,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        random: bool,
        #[arg(long, conflicts_with = "exhaustive")]
        trials: Option<u64>,
        #[arg(long, conflicts_with = "exhaustive")]
        seed: Option<u64>,
        /// Emit one canonical representative per symmetry orbit
        #[arg(long)]
        dedup: bool,
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
        #[arg(long)]
        allow_zero: bool,
        /// Lift the exhaustive candidate budget
        #[arg(long, conflicts_with = "random")]
        force_budget: bool,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// List eigenvalues and eigenspace bases (N F = lambda F)
    Eigen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Scramble a file into an NHT1 frame (a toy, not a secure cipher)
    Scramble {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Recover the original bytes from an NHT1 frame
    Descramble {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Re-check the built-in published solutions and transform pairs
    PaperTables {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
