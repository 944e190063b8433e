//! `nilcone`: census, builders, verifiers and probes for the nilpotent cones
//! of the line and tadpole quivers.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilcone::{DimensionVector, Multipartition, Partition};

pub const CACHE_ENV: &str = "NILCONE_CHI_CACHE";

#[derive(Parser, Debug)]
#[command(name = "nilcone", version, about)]
pub struct Cli {
    /// χ cache file (default: the user data directory).
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Neither read nor write the χ cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    /// Write the main artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of components χ(λ, μ) of an edge stratum.
    Chi {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        #[arg(value_parser = parse_partition)]
        mu: Partition,
    },
    /// Kostant partition function K(v).
    Kostant {
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
    },
    /// Component census of a nilpotent cone.
    Census {
        #[command(subcommand)]
        which: CensusKind,
    },
    /// Build a point in a prescribed stratum and write it as JSON.
    Build {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
        /// Multipartition such as "(1);(2,1)".
        #[arg(long, value_parser = parse_multipartition)]
        strata: Multipartition,
        /// Which enumerated proper pairing to use on each edge, e.g. "0;1".
        #[arg(long)]
        pairings: Option<String>,
    },
    /// Check a representation against a stratum.
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = parse_multipartition)]
        strata: Multipartition,
    },
    /// Bound the local dimension of the nilpotent cone at a point.
    Probe {
        file: PathBuf,
        #[arg(long)]
        predict: Option<usize>,
    },
    /// Commutator Jordan types of random strictly upper-triangular pairs.
    Histogram { d: usize },
}

#[derive(Subcommand, Debug)]
pub enum CensusKind {
    /// Line quiver: K(v) components of dimension Σ vᵢvᵢ₊₁.
    An {
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
    },
    /// Tadpole quiver: closed form when the loop vertex has dimension ≤ 2,
    /// stratum records otherwise.
    Tn {
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
    },
    /// Tadpole quiver: one record per stratum.
    TnStrata {
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
    },
    /// Tadpole quiver: the balanced two-row top stratum.
    TnTop {
        #[arg(value_parser = parse_dims)]
        v: DimensionVector,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    An,
    Tn,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_dims(s: &str) -> Result<DimensionVector, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_multipartition(s: &str) -> Result<Multipartition, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Process outcome, mapped onto exit codes.
pub enum Outcome {
    Pass,
    Fail,
    Usage(String),
    Internal(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Outcome::Internal(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
