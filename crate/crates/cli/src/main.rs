//! `onlineshare`: load cooperative games, run online value-sharing
//! mechanisms over arrival orders and verify their properties.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 input error,
//! 3 refused because the game is too large.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "onlineshare", version, about = "Online value sharing for cooperative games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shapley value from the permutation and coalition oracles.
    Shapley(GameArgs),
    /// Cumulative shares after each arrival of one order.
    Run(RunArgs),
    /// Allocation, structure and metrics for every arrival order.
    Table(TableArgs),
    /// Check properties of a mechanism on a game.
    Verify(VerifyArgs),
    /// Expected Shapley distance and egalitarian welfare of several mechanisms.
    Compare(CompareArgs),
    /// Threshold-layer decomposition of a monotone game.
    Decompose(DecomposeArgs),
    /// Check properties over enumerated or sampled 0-1 monotone games.
    Sweep(SweepArgs),
    /// Classify a 0-1 monotone game as solvable or not.
    Solvable(GameArgs),
    /// Critical players, marginal player and minimal critical prefix per order.
    Structure(StructureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(name = "json-like", alias = "json")]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    /// Game document (JSON); `-` reads standard input.
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Add decimal renderings rounded to this many digits.
    #[arg(long)]
    pub decimals: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MechanismArgs {
    /// `rfc`, `evs` or `wvs`; `wvs:1,1/2` carries weights inline.
    #[arg(long, default_value = "evs")]
    pub mechanism: String,
    /// Weight list for `wvs`, e.g. `1,1/2,1/4`.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
    /// Comma-separated player labels in arrival order.
    #[arg(long)]
    pub order: String,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
    /// CSV with one line per (order, player) instead of one line per order.
    #[arg(long)]
    pub long: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
    /// Comma-separated subset of efficiency, oir, sf, i4ea, mos,
    /// critical_ordering, critical_support, anonymity, solvable.
    #[arg(long, default_value = "efficiency,oir,sf,i4ea,mos")]
    pub properties: String,
    /// Compare every pair of orders for I4EA, not only adjacent swaps, and
    /// cross-check the two modes.
    #[arg(long)]
    pub strict_i4ea: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Repeatable; `wvs:1,1/2` carries weights inline.
    #[arg(long = "mechanism", required = true)]
    pub mechanisms: Vec<String>,
    /// Weights for a single `wvs` given without inline weights.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Run this mechanism on every layer and sum the results.
    #[arg(long)]
    pub apply: Option<String>,
    #[arg(long)]
    pub weights: Option<String>,
    /// Order for `--apply`; without it shares are averaged over all orders.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Number of players; exhaustive up to 4, sampled at 5.
    #[arg(long)]
    pub players: usize,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
    #[arg(long, default_value = "sf,oir,i4ea,mos")]
    pub properties: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Games drawn in sampled mode.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Include unsolvable games.
    #[arg(long)]
    pub all_games: bool,
    /// Compare every pair of orders for I4EA.
    #[arg(long)]
    pub strict_i4ea: bool,
    /// Directory receiving one JSON document per failing game.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct StructureArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Single order; all orders when omitted.
    #[arg(long)]
    pub order: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Shapley(a) => commands::shapley(&a),
        Command::Run(a) => commands::run(&a),
        Command::Table(a) => commands::table(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Decompose(a) => commands::decompose(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Solvable(a) => commands::solvable(&a),
        Command::Structure(a) => commands::structure(&a),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(if outcome.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_size_guard() { 3 } else { 2 })
        }
    }
}
