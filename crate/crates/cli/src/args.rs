use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "monostab",
    version,
    about = "Exact monomial ideal computations and stability indices of powers"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Comma-separated variable names, e.g. `x,y,z`.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Generators, e.g. `x^2*y, y*z^3` or `((x*y)^2, (x*z)^2)`.
    #[arg(long, global = true)]
    pub ideal: Option<String>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Zero all timing fields so reports can be diffed.
    #[arg(long, global = true)]
    pub stable_output: bool,
    /// Characteristic for rank computations: 0 for the rationals, or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Feasibility method for Newton polyhedron membership.
    #[arg(long, global = true, value_enum, default_value_t = SolverArg::Simplex)]
    pub solver: SolverArg,
    /// Generators allowed for lcm-lattice homology.
    #[arg(long, global = true)]
    pub limit_lattice_generators: Option<usize>,
    /// Chains allowed in one order-complex homology computation.
    #[arg(long, global = true)]
    pub limit_lattice_chains: Option<usize>,
    /// Elements allowed in a join-closed lcm lattice.
    #[arg(long, global = true)]
    pub limit_lattice_elements: Option<usize>,
    /// Lattice points allowed in an integral closure enumeration.
    #[arg(long, global = true)]
    pub limit_closure_box: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Simplex,
    FourierMotzkin,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Associated primes.
    Ass,
    /// Minimal primes.
    Min,
    /// Irredundant irreducible decomposition.
    Decompose,
    /// Depth of R/I.
    Depth,
    /// Multigraded Betti numbers of R/I.
    Betti,
    /// Integral closure of I^k.
    Closure {
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
    /// Colon ideal I : J (J may be a single monomial).
    Colon {
        #[arg(long)]
        by: String,
    },
    /// Ass and depth along I, I^2, ..., I^N with stability indices.
    Profile {
        #[arg(long, default_value_t = 6)]
        horizon: usize,
        /// Also profile the integral closures of the powers.
        #[arg(long)]
        closure: bool,
    },
    /// Structural checks on the profile.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Recompute every claimed family value and report pass/fail rows.
    PaperSuite {
        /// Family parameters.
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        c: Vec<u64>,
        /// Override the per-family horizon.
        #[arg(long)]
        horizon: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckKind {
    /// Two variables: all indices are 1.
    Dim2 {
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// Three variables: the Ass and depth indices agree.
    Dim3 {
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// Depth of powers (or of their closures) never increases.
    Monotone {
        #[arg(long, default_value_t = 6)]
        horizon: usize,
        #[arg(long)]
        on_closure: bool,
    },
}
