use std::path::PathBuf;

use chp_pack::Sides;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chp-pack", version, about = "Curved hexagonal packings of congruent disks in regular polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shape {
    /// Number of polygon sides (a multiple of 6), or `circle`.
    #[arg(long)]
    pub sigma: Sides,
    /// Number of shells around the central disk.
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PinMode {
    /// Pin the disks on the container boundary and the central disk.
    Border,
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Border chain, diameter and symmetry data as JSON.
    Solve(Shape),
    /// Packing fraction of the CHP.
    Density(Shape),
    /// Number of inequivalent CHP configurations.
    Count(Shape),
    /// Canonical DNA strings, one per line.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Refuse to enumerate more than this many configurations.
        #[arg(long, default_value_t = chp_pack::chp::DEFAULT_CAP)]
        limit: usize,
    },
    /// Build a CHP configuration from its DNA.
    Build {
        #[command(flatten)]
        shape: Shape,
        /// Letter string; defaults to the lowest-order DNA.
        #[arg(long)]
        dna: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classification table as CSV.
    Tables {
        #[arg(long, value_delimiter = ',', default_values_t = [12u32, 18, 24, 30, 36, 42, 48, 54, 60])]
        sigma_list: Vec<u32>,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        /// Enumerate only rows with at most this many configurations.
        #[arg(long, default_value_t = chp_pack::chp::DEFAULT_CAP)]
        cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random starts followed by the energy ladder; keeps the best trial.
    Pack {
        #[arg(long)]
        sigma: Sides,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[command(flatten)]
        ladder: LadderArgs,
        /// Polish the best result.
        #[arg(long)]
        refine: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Repeated shake trials on a configuration; streams density per rung.
    Shake {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = PinMode::None)]
        pin: PinMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        amplitude: f64,
        #[command(flatten)]
        ladder: LadderArgs,
        /// Polish the final configuration.
        #[arg(long)]
        refine: bool,
        /// Write the final configuration here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the density-per-rung CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check separation and containment; exits 3 if the packing is invalid.
    Validate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = chp_pack::validation::CERTIFY_TOL)]
        tol: f64,
    },
    /// Draw a configuration as SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        contacts: bool,
        #[arg(long)]
        fundamental: bool,
    },
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    /// Last exponent of the ladder.
    #[arg(long, default_value_t = 1e8)]
    pub s_final: f64,
    #[arg(long, default_value_t = 1.5)]
    pub s_factor: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_inner_iters: usize,
}
