use clap::{Args, Parser, Subcommand, ValueEnum};
use rack_collapse::config::{Budgets, Caps, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "rack-collapse",
    version,
    about = "Collapse certificates and braiding analyses as JSON"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[arg(long, global = true, default_value_t = Caps::default().orbit)]
    pub orbit_cap: usize,
    #[arg(long, global = true, default_value_t = Caps::default().group)]
    pub group_cap: u64,
    #[arg(long, global = true, default_value_t = Caps::default().subgroups)]
    pub subgroup_cap: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().pairs)]
    pub pair_budget: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().quadruples)]
    pub quadruple_budget: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().random)]
    pub random_budget: u64,
}

impl Global {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            caps: Caps {
                orbit: self.orbit_cap,
                group: self.group_cap,
                subgroups: self.subgroup_cap,
            },
            budgets: Budgets {
                pairs: self.pair_budget,
                quadruples: self.quadruple_budget,
                random: self.random_budget,
            },
            output: self.output.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// ²B₂(2^(2h+1)), needs --h.
    Sz,
    /// ²G₂(3).
    Ree,
    /// PSL₂(q), needs --q.
    Psl2,
    /// PSL₂(q) × PSL₂(q), needs --q.
    Psl2Squared,
}

#[derive(Debug, Clone, Args)]
pub struct GroupSpec {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassFilter {
    /// Keep classes whose elements have this order.
    #[arg(long)]
    pub class_order: Option<u64>,
    /// Keep only the class with this index in `classes` output.
    #[arg(long)]
    pub class: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BraidingGroup {
    /// `T·Z(U⁻)` inside ²B₂(2^(2h+1)), element `U(0,1)`.
    Sz,
    /// ²G₂(3), element `φ`.
    Ree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbelianArg {
    /// `A = ⟨O ∩ C(g)⟩`, class-orbit transversal.
    Auto,
    /// The preset subgroup `A` and transversal for the chosen group.
    Explicit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group construction.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Conjugacy classes with centralizer orders and reality.
    Classes {
        #[command(flatten)]
        group: GroupSpec,
    },
    /// Runs the C, D and F detectors; one document per class.
    Classify {
        #[command(flatten)]
        group: GroupSpec,
        #[command(flatten)]
        filter: ClassFilter,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
    },
    /// Braiding matrices, diagrams and verdicts for every character.
    Braiding {
        #[arg(long, value_enum)]
        group: BraidingGroup,
        #[arg(long, default_value_t = 1)]
        h: usize,
        /// Class index in the ambient group; defaults to `U(0,1)` or `φ`.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, value_enum, default_value_t = AbelianArg::Auto)]
        abelian: AbelianArg,
    },
    /// Runs the named check registry; exit 1 if any check fails.
    VerifyPaper {
        #[arg(long, default_value_t = 1)]
        h_max: usize,
    },
    /// Rack axioms and certificate verification.
    Rack {
        #[command(subcommand)]
        action: RackAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    Build {
        #[command(flatten)]
        group: GroupSpec,
    },
}

#[derive(Debug, Subcommand)]
pub enum RackAction {
    /// Axiom check on one class.
    Check {
        #[command(flatten)]
        group: GroupSpec,
        #[arg(long)]
        class: usize,
        /// Random triples when the class is too large for an exhaustive pass.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Re-verifies a certificate read from a file (`-` for stdin).
    VerifyCert { path: String },
}
