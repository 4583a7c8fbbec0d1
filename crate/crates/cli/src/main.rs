use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

/// Krull-Schmidt decompositions of thick subcategories.
#[derive(Debug, Parser)]
#[command(name = "thickset", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plain,
    Punctured,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Catalog entry name, or `SpecZ` for the integers.
    #[arg(long)]
    model: Option<String>,

    /// Poset description file; takes precedence over --model.
    #[arg(long)]
    poset: Option<String>,

    /// Decomposition mode; defaults to the catalog entry's hint, else plain.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a thick support into its indecomposable pieces.
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        /// Support as JSON: element names, primes, or "whole".
        #[arg(long)]
        support: String,
    },
    /// List every thick support of a poset with its indecomposability.
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
        /// Skip the empty support.
        #[arg(long)]
        nonempty: bool,
    },
    /// Pipelines on perfect complexes over the integers.
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
    /// The lattice of thick subcategories of finite spectra.
    Spectra {
        #[command(subcommand)]
        op: SpectraOp,
    },
    /// Built-in and user catalog entries.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
    /// Check a decomposition produced by `decompose`.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Path to the decomposition JSON, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexOp {
    Homology(ComplexInput),
    Support(ComplexInput),
    Split(ComplexInput),
    K0 {
        #[command(flatten)]
        input: ComplexInput,
        /// Ambient primes as JSON, e.g. `[2,3]` or `"whole"`; defaults to the support.
        #[arg(long)]
        support: Option<String>,
    },
    Dual(ComplexInput),
}

#[derive(Debug, Args)]
struct ComplexInput {
    /// Path to the complex JSON, `-` for stdin, or inline JSON.
    #[arg(long)]
    input: String,
}

#[derive(Debug, Subcommand)]
enum SpectraOp {
    Decompose(ComplexInput),
    /// Input is a two-element array `[a, b]`.
    Intersect(ComplexInput),
    /// Input is a two-element array `[a, b]`; asks whether `a` contains `b`.
    Contains(ComplexInput),
}

#[derive(Debug, Subcommand)]
enum CatalogOp {
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
