//! `shamsuddin`: command-line access to the derivation toolkit.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "shamsuddin",
    version,
    about = "Decide properties of Shamsuddin derivations of Q[x, y1..yn]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exactly one place to read the derivation from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Derivation file, or `-` for stdin.
    pub input: Option<String>,
    /// Inline derivation text, e.g. "y1: a=x, b=1".
    #[arg(long)]
    pub deriv: Option<String>,
}

/// Input and output flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    /// Print one JSON object instead of text.
    #[arg(long)]
    pub json: bool,
    /// Map a boolean verdict to the exit code: true -> 0, false -> 1.
    #[arg(long)]
    pub exit_status: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide simplicity, with a (k, z) witness for each non-simple block.
    Simple(Common),
    /// Decide whether the isotropy group is trivial.
    Isotropy {
        #[command(flatten)]
        common: Common,
        /// Print a verified non-identity automorphism commuting with D.
        #[arg(long)]
        witness: bool,
    },
    /// Describe the isotropy group of a single-block derivation.
    Describe {
        #[command(flatten)]
        common: Common,
        /// Seed for the sampled member.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide local finiteness (triangular derivations allowed).
    LocallyFinite(Common),
    /// Classify Im D as a Mathieu-Zhao subspace.
    Mz(Common),
    /// Search for f with D(f) = target inside a bounded monomial box.
    Preimage {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 8)]
        max_x_deg: u32,
        #[arg(long, default_value_t = 4)]
        max_y_deg: u32,
    },
    /// Apply D to a polynomial.
    Apply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Check whether an endomorphism commutes with D.
    Commute {
        #[command(flatten)]
        common: Common,
        /// File with entries `x -> ...` and `y<i> -> ...`.
        #[arg(
            long,
            conflicts_with = "endo_text",
            required_unless_present = "endo_text"
        )]
        endo: Option<String>,
        /// Inline endomorphism text.
        #[arg(long)]
        endo_text: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Simple(c) => (c, commands::simple(c)),
        Command::Isotropy { common, witness } => (common, commands::isotropy(common, *witness)),
        Command::Describe { common, seed } => (common, commands::describe(common, *seed)),
        Command::LocallyFinite(c) => (c, commands::locally_finite(c)),
        Command::Mz(c) => (c, commands::mz(c)),
        Command::Preimage {
            common,
            target,
            max_x_deg,
            max_y_deg,
        } => (
            common,
            commands::preimage(common, target, *max_x_deg, *max_y_deg),
        ),
        Command::Apply { common, poly } => (common, commands::apply(common, poly)),
        Command::Commute {
            common,
            endo,
            endo_text,
        } => (
            common,
            commands::commute(common, endo.as_deref(), endo_text.as_deref()),
        ),
    };
    match result {
        Ok(report) => report.emit(common),
        Err(failure) => Failure::emit(&failure, common),
    }
}
