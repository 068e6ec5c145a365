use clap::{Args, Parser, Subcommand, ValueEnum};
use divseq_core::{Limits, Path};

#[derive(Debug, Parser)]
#[command(
    name = "divseq",
    version,
    about = "Exact divisor-difference sequences, Josephus survivors and certified constants"
)]
pub struct Cli {
    /// Emit a JSON envelope instead of plain text.
    #[arg(long, global = true, conflicts_with = "bfile")]
    pub json: bool,

    /// Emit an OEIS b-file (`seq` and `divisors` only).
    #[arg(long, global = true)]
    pub bfile: bool,

    #[command(flatten)]
    pub limits: LimitArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest integer handled by trial division.
    #[arg(long, global = true, value_name = "M")]
    pub oracle_bound: Option<u64>,

    /// Largest divisor enumeration.
    #[arg(long, global = true, value_name = "COUNT")]
    pub divisor_cap: Option<u64>,

    /// Largest circle for the explicit Josephus simulation.
    #[arg(long, global = true, value_name = "N")]
    pub sim_cap: Option<u64>,

    /// Largest bit length of any integer built or printed.
    #[arg(long, global = true, value_name = "BITS")]
    pub max_bits: Option<u64>,
}

impl LimitArgs {
    pub fn resolve(&self) -> Limits {
        let d = Limits::default();
        Limits {
            oracle_bound: self.oracle_bound.unwrap_or(d.oracle_bound),
            divisor_cap: self.divisor_cap.unwrap_or(d.divisor_cap),
            simulation_cap: self.sim_cap.unwrap_or(d.simulation_cap),
            max_term_bits: self.max_bits.unwrap_or(d.max_term_bits),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms of a_n or b_n.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Minimal complementary divisor difference of M.
    Delta {
        /// Decimal integer or a product like `3*2^40`.
        m: String,
        /// Only consider differences strictly greater than T.
        #[arg(long, value_name = "T")]
        above: Option<String>,
    },
    /// Divisors of M in increasing order.
    Divisors {
        /// Decimal integer or a product like `3*2^40`.
        m: String,
        /// Print only the number of divisors.
        #[arg(long)]
        count_only: bool,
    },
    /// Check a_n = 2^(b_n) from the divisor definition.
    Theorem {
        #[arg(long, value_name = "N")]
        max: u64,
        #[arg(long, value_enum)]
        path: ExactPath,
    },
    /// Check the divisor-count (1) or middle-pair (2) lemma.
    Lemma {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long, value_name = "K")]
        max_k: u64,
    },
    /// Josephus survivor with step Q.
    Josephus {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = AlgoArg::All)]
        algo: AlgoArg,
    },
    /// Certified enclosures of c and K(3).
    #[command(subcommand)]
    Constants(ConstCmd),
    /// Relation checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Recompute every checkable number and print a claim table.
    Reproduce {
        /// Skip the trial-division paths.
        #[arg(long)]
        fast_only: bool,
        /// Terms used for the constant enclosures.
        #[arg(long, default_value_t = 200)]
        terms: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCmd {
    /// a_0..a_N.
    A {
        #[arg(long, value_name = "N")]
        max: u64,
        #[arg(long, value_enum, default_value_t = PathArg::Fast)]
        path: PathArg,
    },
    /// b_1..b_N.
    B {
        #[arg(long, value_name = "N")]
        max: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstCmd {
    /// Enclosure of c from b_1..b_N.
    C {
        #[arg(long, value_name = "N")]
        terms: u64,
        /// Cap on printed decimal places.
        #[arg(long, value_name = "D", default_value_t = 1000)]
        digits: usize,
    },
    /// Enclosure of K(3) from the N-th ceiling iterate.
    K3 {
        #[arg(long, value_name = "N")]
        terms: u64,
        #[arg(long, value_name = "D", default_value_t = 1000)]
        digits: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Compare c with (2/9)·K(3).
    Relation {
        #[arg(long, value_name = "N")]
        terms: u64,
        #[arg(long, value_name = "P")]
        min_places: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Oracle,
    Factored,
    Fast,
}

impl From<PathArg> for Path {
    fn from(p: PathArg) -> Path {
        match p {
            PathArg::Oracle => Path::Oracle,
            PathArg::Factored => Path::Factored,
            PathArg::Fast => Path::Fast,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactPath {
    Oracle,
    Factored,
}

impl From<ExactPath> for Path {
    fn from(p: ExactPath) -> Path {
        match p {
            ExactPath::Oracle => Path::Oracle,
            ExactPath::Factored => Path::Factored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Recurrence,
    Simulation,
    Ow,
    All,
}
