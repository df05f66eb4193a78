//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chancap",
    version,
    about = "Entropic characteristics of quantum channels: duality, roofs, capacities",
    after_help = "Exit codes: 0 ok, 1 usage, 2 validation failure, 3 property violation."
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Base seed for every random draw in the run
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Input dimension for factory-built channels
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Optimizer restarts
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Per-restart optimizer tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Per-restart iteration cap (0 = dimension-scaled default)
    #[arg(long = "max-iters", global = true)]
    pub max_iters: Option<usize>,
    /// Decomposition size for roof optimizations (default: rank squared)
    #[arg(long, global = true)]
    pub members: Option<usize>,
    /// Report entropic values in bits instead of nats
    #[arg(long, global = true)]
    pub bits: bool,
    /// Write the report to this path (also printed to stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Flat key = value config file; command-line flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChoiMode {
    Forward,
    Inverse,
    Membership,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    /// Projective output truncations increasing to the identity
    A,
    /// Kraus subfamilies, dominated in the operator order
    B,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Entropies of an operator file (S, H, spectrum, optional truncations)
    Entropy {
        /// Operator JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// Also compute the truncated entropy of this order
        #[arg(long)]
        n: Option<usize>,
        /// Second operator for the relative entropy
        #[arg(long = "rel-to")]
        rel_to: Option<PathBuf>,
    },
    /// Channel/state duality: forward, inverse, membership or roundtrip
    Choi {
        #[arg(value_enum)]
        mode: ChoiMode,
        /// Channel spec (factory[:param]) for forward/roundtrip
        #[arg(long)]
        channel: Option<String>,
        /// Composite-operator JSON file for inverse/membership
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Reference state file (default: maximally mixed)
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Output-entropy roofs (extended and plain) of a channel at a state
    Roof {
        #[arg(long)]
        channel: String,
        /// State JSON file (default: seeded random full-rank state)
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Holevo quantity of a channel at a state, by both routes
    Chi {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Entanglement of formation of a bipartite state
    Eof {
        /// Bipartite state JSON (default: seeded random two-qubit state)
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Factor dimensions, e.g. 2,2
        #[arg(long)]
        dims: Option<String>,
    },
    /// Truncated-entropy roof of order n
    Troof {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Constrained capacity over an energy ball or a finite hull
    Capacity {
        #[arg(long)]
        channel: String,
        /// Energy bound (with the Hamiltonian; omit for unconstrained)
        #[arg(long)]
        bound: Option<f64>,
        /// Hamiltonian JSON file (default: diagonal ladder 0..d-1)
        #[arg(long)]
        ham: Option<PathBuf>,
        /// Comma-separated state files spanning a finite hull
        #[arg(long)]
        hull: Option<String>,
    },
    /// Additivity gap of a channel pair at a joint state
    Additivity {
        #[arg(long = "channel-a")]
        channel_a: String,
        #[arg(long = "channel-b")]
        channel_b: String,
        /// Joint state JSON (default: seeded random entangled state)
        #[arg(long)]
        omega: Option<PathBuf>,
        /// Use the product of the seeded marginals instead
        #[arg(long)]
        product: bool,
    },
    /// Entanglement-breaking test of a channel
    EbTest {
        #[arg(long)]
        channel: String,
    },
    /// Energy amplification factor of a channel
    AmpFactor {
        #[arg(long)]
        channel: String,
        #[arg(long = "ham-in")]
        ham_in: Option<PathBuf>,
        #[arg(long = "ham-out")]
        ham_out: Option<PathBuf>,
        /// Random pure states cross-checking the exact value
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Convergence table of roofs and distances along a truncation scheme
    Converge {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, value_enum)]
        scheme: Option<Scheme>,
    },
    /// Seeded inequality fuzz suite with per-inequality counters
    Fuzz {
        /// Cases per inequality (default 1000)
        #[arg(long)]
        cases: Option<usize>,
        /// Largest dimension in the sweep (default 6)
        #[arg(long = "dim-max")]
        dim_max: Option<usize>,
    },
}
