use clap::{Args, Parser, Subcommand, ValueEnum};

use betanum::verify::Check;
use betanum::DEFAULT_FRACTIONAL_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "betanum",
    version,
    about = "Exact arithmetic in quadratic non-simple Parry bases"
)]
pub struct Cli {
    /// First coefficient of the Renyi expansion of unity.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Repeated coefficient; needs 1 <= q < p.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Most fractional digits produced by greedy expansion.
    #[arg(long, global = true, default_value_t = DEFAULT_FRACTIONAL_BUDGET,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub budget: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greedy expansion of a value or of a digit string's value.
    Expand(Operand),
    /// Rewrites a representation into the expansion.
    Normalize {
        #[arg(long)]
        digits: String,
    },
    /// Adds two values; nonnegative beta-integers also report epsilon.
    Add {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Adds beta^l to a beta-integer.
    Addpow {
        #[arg(long)]
        digits: String,
        #[arg(long)]
        l: u32,
    },
    /// The first n nonnegative beta-integers.
    List {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// The next beta-integer and the gap to it.
    Succ(Operand),
    /// Exhaustive search for the largest fractional part of a sum.
    Lplus {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=8))]
        digit_bound: u32,
    },
    /// Expansion of j (p-q)/beta.
    Lemmaf {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
    },
    /// Sliding-window letter counts over a prefix of the fixed point.
    Balance {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        prefix_len: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        max_window: u64,
    },
    /// The sequence D_n by three methods.
    Dn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Prefixes of the fixed point and companion word, w_n, or the substitution.
    Words {
        #[arg(long, value_enum)]
        kind: WordArg,
        /// Prefix length, or index for `wn`.
        #[arg(long)]
        n: Option<u64>,
        /// Input word for `subst`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Runs grid checks, one line per pair and check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Operand {
    /// A value such as `6`, `b-1` or `(1+2b)/b^2`.
    #[arg(long, allow_hyphen_values = true)]
    pub value: Option<String>,
    /// A digit string such as `10.3`.
    #[arg(long)]
    pub digits: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WordArg {
    U,
    W,
    Wn,
    Subst,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub p_min: u32,
    #[arg(long, default_value_t = 8)]
    pub p_max: u32,
    /// Skip q = p - 1.
    #[arg(long)]
    pub non_unit: bool,
    /// Comma-separated check names; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<Check>,
    #[arg(long)]
    pub prefix_len: Option<usize>,
    #[arg(long)]
    pub max_window: Option<usize>,
    #[arg(long)]
    pub digit_bound: Option<u32>,
    #[arg(long)]
    pub max_word_len: Option<u64>,
    #[arg(long)]
    pub enumeration: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}
