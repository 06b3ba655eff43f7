use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "dehnkit", version, about = "Finite-ball experiments on Cayley complexes, Dehn functions and combings")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. The output directory and thread count
/// do not change any result and are left out of the embedded config.
#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    /// Directory for report files.
    #[arg(long, global = true, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Node budget per solver instance.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_nodes: u64,
    /// Wall-clock budget in seconds for the whole run.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Seed for flagged sampling and random chains.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Enumerate a ball of the Cayley graph.
    Ball(BallArgs),
    /// Build a presentation complex or cubical lattice and report its cells.
    Complex(ComplexArgs),
    /// Tabulate the ball-restricted Dehn function.
    Dehn(DehnArgs),
    /// Minimal filling of a loop or of a box surface.
    Filling(FillingArgs),
    /// Cone off subgroups; four-point δ and coset-penetration constants.
    Coned(ConedArgs),
    /// Build the coned-off combing and its lift; measure K, N, M, T.
    Comb(CombArgs),
    /// Bar-complex chains: cone identities on random chains.
    Bar(BarArgs),
    /// Mutual domination of two tabulated functions.
    Compare(CompareArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ball(_) => "ball",
            Command::Complex(_) => "complex",
            Command::Dehn(_) => "dehn",
            Command::Filling(_) => "filling",
            Command::Coned(_) => "coned",
            Command::Comb(_) => "comb",
            Command::Bar(_) => "bar",
            Command::Compare(_) => "compare",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BallArgs {
    #[arg(long)]
    pub pres: PathBuf,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value_t = dehnkit_core::cayley::DEFAULT_VERTEX_CAP)]
    pub vertex_cap: usize,
}

/// Either a presentation complex (`--pres`) or a cubical lattice (`--cubical K`).
#[derive(Args, Debug, Clone, Serialize)]
pub struct SpaceArgs {
    #[arg(long, conflicts_with = "cubical")]
    pub pres: Option<PathBuf>,
    /// Rank of the cubical lattice on ℤ^K.
    #[arg(long)]
    pub cubical: Option<usize>,
    /// Top cell dimension of the cubical lattice (default K).
    #[arg(long, requires = "cubical")]
    pub maxdim: Option<usize>,
    #[arg(long)]
    pub radius: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// List every cell with its boundary.
    #[arg(long)]
    pub cells: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DehnArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long)]
    pub kmax: u64,
    /// Tabulate the weighted Dehn function.
    #[arg(long)]
    pub weighted: bool,
    /// Also tabulate the other variant and check both bridge inequalities.
    #[arg(long)]
    pub bridge: bool,
    /// Node cap for boundary enumeration.
    #[arg(long, default_value_t = 50_000_000)]
    pub enumeration_cap: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FillingArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Loop word read from `--start` (presentation complexes).
    #[arg(long, conflicts_with = "box_side")]
    pub word: Option<String>,
    /// Start vertex of the loop as a word (default identity).
    #[arg(long)]
    pub start: Option<String>,
    /// Surface of the box [0, s]^K (cubical lattices).
    #[arg(long = "box")]
    pub box_side: Option<i64>,
    /// Minimise the weighted count instead of the plain count.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConedArgs {
    #[arg(long)]
    pub pres: PathBuf,
    /// Comma-separated subgroup names to cone off.
    #[arg(long, value_delimiter = ',')]
    pub subgroups: Vec<String>,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value_t = dehnkit_core::coned::DEFAULT_QUADRUPLE_CAP)]
    pub quadruple_cap: u64,
    #[arg(long, default_value_t = dehnkit_core::coned::DEFAULT_GEODESIC_CAP)]
    pub geodesic_cap: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CombArgs {
    #[arg(long)]
    pub pres: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub subgroups: Vec<String>,
    #[arg(long)]
    pub radius: usize,
    /// Polynomial P in x, e.g. "x" or "x^2 + 1".
    #[arg(long, default_value = "x")]
    pub poly: String,
    /// Use this c(1) instead of the measured BCP constant.
    #[arg(long)]
    pub c1: Option<u64>,
    /// Constant c used in the length bound (default: c(1)).
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long, default_value_t = dehnkit_core::coned::DEFAULT_GEODESIC_CAP)]
    pub geodesic_cap: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BarArgs {
    /// Run the cone-identity self test.
    #[arg(long)]
    pub selftest: bool,
    /// Chain file `{degree, terms: [{tuple, coeff}]}` to differentiate and cone.
    #[arg(long)]
    pub chain: Option<PathBuf>,
    /// Group whose ball supplies tuple entries (default ℤ²).
    #[arg(long)]
    pub pres: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    /// Random cycles and random non-cycles per run.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompareArgs {
    /// CSV table with columns k,value (as written by `dehn`).
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    /// Upper limit for each of A, B, C, D, E.
    #[arg(long = "box", default_value_t = 8)]
    pub box_max: u64,
}
