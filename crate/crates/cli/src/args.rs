use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elevatum_core::SeedId;

#[derive(Parser, Debug)]
#[command(name = "elevatum", version, about = "Certified geometry of elevated polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the seed solids with their counts.
    Catalog {
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Export a seed, optionally elevated, as OFF or OBJ.
    Build {
        seed: SeedId,
        #[command(flatten)]
        elevation: Elevation,
        /// Output file; the extension (.off or .obj) picks the format.
        #[arg(long)]
        out: PathBuf,
        /// Significant digits per coordinate, 6 to 40.
        #[arg(long, default_value_t = 17)]
        digits: usize,
    },
    /// Check a registered claim and print its JSON report.
    Verify {
        claim: String,
        #[arg(long, default_value = "icosidodecahedron")]
        seed: SeedId,
        #[command(flatten)]
        elevation: Elevation,
        /// Base face index of the pentagon; defaults to the first one.
        #[arg(long)]
        pentagon: Option<usize>,
        #[command(flatten)]
        precision: Precision,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enclose the pentagon height that makes the six apexes coplanar.
    SolveHeight {
        #[arg(long, default_value = "icosidodecahedron")]
        seed: SeedId,
        /// Triangle pyramid height in edge units, or `equilateral`.
        #[arg(long, default_value = "equilateral")]
        fixed_tri: String,
        /// Maximum width of the returned interval.
        #[arg(long, default_value = "1e-30")]
        tol: String,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Which vertices touch a support plane pushed along a face axis.
    Contact {
        #[arg(long)]
        seed: SeedId,
        #[command(flatten)]
        elevation: Elevation,
        /// `pentagon:K`, `triangle:K`, `square:K`, `decagon:K` (K-th face of
        /// that kind) or a plain base face index.
        #[arg(long)]
        face: String,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ElevateMode {
    None,
    Equilateral,
    Zero,
}

#[derive(Args, Debug)]
pub struct Elevation {
    /// Pyramid rule for every face.
    #[arg(long, value_enum, conflicts_with = "heights")]
    pub elevate: Option<ElevateMode>,
    /// Per-arity heights in edge units, e.g. `tri=0.8,pent=equilateral`.
    #[arg(long)]
    pub heights: Option<String>,
}

#[derive(Args, Debug)]
pub struct Precision {
    #[arg(long, default_value_t = 64)]
    pub precision_start: u32,
    #[arg(long, default_value_t = 4096)]
    pub precision_max: u32,
}
