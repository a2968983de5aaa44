//! Online value-sharing for cooperative games.
//!
//! Players join a coalition one at a time and the value created so far has to
//! be split among the players who have already arrived, irrevocably. This
//! crate implements the rewarding-the-first-critical-player (RFC), weighted
//! value-sharing (WVS) and egalitarian value-sharing (EVS) mechanisms for
//! 0-1 monotone games, lifts them to general monotone games through threshold
//! layers, and verifies fairness and incentive properties exactly by
//! enumerating every arrival order.
//!
//! All values are exact rationals ([`Rational`]).
//!
//! ```
//! use onlineshare::{parse_game, ArrivalOrder, evs_allocate};
//!
//! let game = parse_game(r#"{"players":["A","B","C","D"],"form":"minimal",
//!     "minimal_winning":[["A","B","C"],["A","B","D"]]}"#).unwrap();
//! let order = ArrivalOrder::parse(&game, "C,A,D,B").unwrap();
//! let alloc = evs_allocate(&game, &order).unwrap();
//! assert_eq!(onlineshare::format_rational(alloc.share(game.player("A").unwrap())), "2/3");
//! ```

pub mod analysis;
pub mod enumerate;
mod error;
pub mod game;
pub mod mechanisms;
mod rational;
pub mod report;
pub mod shapley;
pub mod structure;
pub mod sweep;

pub use analysis::{
    check_anonymity, check_critical_ordering, check_critical_support, check_efficiency, check_i4ea, check_mos,
    check_oir, check_sf, egalitarian_welfare, expected_metrics, shapley_distance, Counterexample, I4eaMode,
    MetricReport, OrderTable, Property, PropertyReport, Verdict,
};
pub use enumerate::{enumerate_zero_one_monotone_games, EnumeratedGame};
pub use error::{Error, Result};
pub use game::{
    is_monotone, local_game, parse_game, parse_game_with_warnings, symmetric_players, ArrivalOrder, Game, GameKind,
    LocalGame, PlayerId, PlayerSet, MAX_ORDER_PLAYERS, MAX_PLAYERS,
};
pub use mechanisms::{
    evs_allocate, general_allocate, online_run, rfc_allocate, wvs_allocate, Allocation, Evs, Layered, Mechanism,
    MechanismKind, OnlineTrace, Rfc, WeightFunction, Wvs,
};
pub use rational::{format_decimal, format_rational, parse_rational, Rational};
pub use shapley::{
    decompose_layers, marginal_contribution, shapley_permutation, shapley_subset, Layer, LayerDecomposition,
    ShapleyVector,
};
pub use structure::{
    is_solvable, minimal_critical_prefix, order_structure, MinimalCriticalPrefix, OrderStructure, Solvability,
};
