//! Command-line surface, parsed with clap.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pairsuite",
    version,
    about = "Symbol-pair coding toolbox: ball counting, rate bounds, RS list decoding, experiments",
    max_term_width = 100
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for machine-readable commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate rate bounds (pair/Hamming GV, Singleton, Johnson radius)
    /// over a grid of relative distances.
    Bounds(BoundsArgs),
    /// Count the exact size of a pair-metric ball.
    Ball(BallArgs),
    /// List-decode a received word of an RS code under the pair metric.
    Decode(DecodeArgs),
    /// Sample random codes and measure maximum list sizes.
    Experiment(ExperimentArgs),
    /// Run the built-in deterministic self checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Alphabet size (any integer >= 2; bounds are purely combinatorial).
    #[arg(long)]
    pub q: u32,

    /// Explicit comma-separated list of relative distances.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["delta_min", "delta_max", "delta_step"])]
    pub deltas: Option<Vec<f64>>,

    /// Start of the default delta grid.
    #[arg(long, default_value_t = 0.05)]
    pub delta_min: f64,

    /// End of the default delta grid (inclusive up to rounding).
    #[arg(long, default_value_t = 0.95)]
    pub delta_max: f64,

    /// Step of the default delta grid.
    #[arg(long, default_value_t = 0.05)]
    pub delta_step: f64,
}

#[derive(Debug, Args)]
pub struct BallArgs {
    /// Word length (number of cyclic pair positions).
    #[arg(long)]
    pub n: usize,

    /// Alphabet size (any integer >= 2).
    #[arg(long)]
    pub q: u32,

    /// Ball radius in pair distance.
    #[arg(long, conflicts_with = "delta")]
    pub radius: Option<usize>,

    /// Radius as a fraction of n: radius = floor(delta * n).
    #[arg(long)]
    pub delta: Option<f64>,

    /// Re-count the ball by enumeration (q must then be a prime power, and
    /// q^n must stay within the enumeration guard).
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Field order (prime power up to 2^16).
    #[arg(long)]
    pub q: u32,

    /// Code length, at most q - 1.
    #[arg(long)]
    pub n: usize,

    /// Code dimension.
    #[arg(long)]
    pub k: usize,

    /// Received word: n symbol indices, comma or space separated.
    #[arg(long, conflicts_with_all = ["message", "errors"], value_name = "SYMBOLS")]
    pub received: Option<String>,

    /// Message to encode (k coefficient indices, low degree first); combined
    /// with --errors this simulates a noisy channel.
    #[arg(long, requires = "errors", value_name = "SYMBOLS")]
    pub message: Option<String>,

    /// Exact pair-error budget injected into the encoded message.
    #[arg(long, requires = "message")]
    pub errors: Option<usize>,

    /// Inject errors as one contiguous burst instead of spread runs.
    #[arg(long)]
    pub burst: bool,

    /// Decoding radius; defaults to the guaranteed radius floor(2(n-2-k)/3).
    #[arg(long)]
    pub radius: Option<usize>,

    /// Allow a radius beyond the guaranteed one (the returned list is still
    /// exact but may miss codewords).
    #[arg(long)]
    pub force: bool,

    /// Seed for error injection (a number, or "random").
    #[arg(long, default_value = "0")]
    pub seed: String,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Field order (prime power up to 2^16).
    #[arg(long)]
    pub q: u32,

    /// Word length.
    #[arg(long)]
    pub n: usize,

    /// Relative ball radius; the measured radius is floor(delta * n).
    #[arg(long)]
    pub delta: f64,

    /// Rate slack: codes get rate 1 - kappa - epsilon and the list target is
    /// ceil(4/epsilon) - 1.
    #[arg(long)]
    pub epsilon: f64,

    /// Number of independently sampled codes.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,

    /// Master seed (a number, or "random").
    #[arg(long, default_value = "0")]
    pub seed: String,

    /// Sample this many ball centers per trial instead of scanning all q^n.
    #[arg(long, value_name = "COUNT")]
    pub centers: Option<usize>,

    /// Measure wall-clock time and include it in the report (output is no
    /// longer byte-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Deliberately corrupt one computation to prove the checks can fail.
    #[arg(long, value_enum, hide = true)]
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Drop the full-weight correction term from the ball-size formula.
    BallCorrection,
}

/// Parses a `--seed` value: a u64, or "random" for an OS-drawn seed.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    if s == "random" {
        return Ok(rand::random());
    }
    s.parse::<u64>().map_err(|_| format!("seed must be a non-negative integer or \"random\", got {s:?}"))
}

/// Parses a symbol list given as comma- and/or whitespace-separated indices.
pub fn parse_symbols(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        out.push(
            tok.parse::<u32>()
                .map_err(|_| format!("symbol index {tok:?} is not a non-negative integer"))?,
        );
    }
    if out.is_empty() {
        return Err("symbol list is empty".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn symbols_accept_commas_and_spaces() {
        assert_eq!(parse_symbols("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_symbols("1 2  3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_symbols(" 4,5 6 ").unwrap(), vec![4, 5, 6]);
        assert!(parse_symbols("a b").is_err());
        assert!(parse_symbols("").is_err());
    }

    #[test]
    fn seeds_parse_numerically() {
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert!(parse_seed("-1").is_err());
        assert!(parse_seed("x").is_err());
    }
}
