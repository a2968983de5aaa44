//! Property sweeps over many games.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{I4eaMode, OrderTable, Property, PropertyReport};
use crate::enumerate::{enumerate_zero_one_monotone_games, sample_zero_one_monotone_games, EnumeratedGame};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::mechanisms::Mechanism;
use crate::shapley::{shapley_permutation, shapley_subset};

/// Largest player count a sweep accepts (exhaustive up to 4, sampled at 5).
pub const MAX_SWEEP_PLAYERS: usize = 5;
pub const MAX_EXHAUSTIVE_SWEEP_PLAYERS: usize = 4;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    /// Number of games drawn when `n` exceeds the exhaustive limit.
    pub samples: usize,
    pub seed: u64,
    pub solvable_only: bool,
    pub properties: Vec<Property>,
    pub i4ea_mode: I4eaMode,
    /// Also run the other I4EA mode and record whether the verdicts agree.
    pub cross_check_i4ea: bool,
}

impl SweepConfig {
    pub fn new(n: usize) -> Self {
        SweepConfig {
            n,
            samples: 200,
            seed: 0,
            solvable_only: true,
            properties: vec![Property::Sf, Property::Oir, Property::I4ea, Property::Mos],
            i4ea_mode: I4eaMode::AdjacentSwaps,
            cross_check_i4ea: false,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.n <= MAX_EXHAUSTIVE_SWEEP_PLAYERS
    }
}

/// The instance set of a sweep: every nonconstant 0-1 monotone game for
/// small `n`, a seeded sample at `n = 5`.
pub fn sweep_games(config: &SweepConfig) -> Result<Vec<EnumeratedGame>> {
    if config.n > MAX_SWEEP_PLAYERS {
        return Err(Error::TooManyPlayers { n: config.n, limit: MAX_SWEEP_PLAYERS });
    }
    if config.is_exhaustive() {
        Ok(enumerate_zero_one_monotone_games(config.n)?
            .into_iter()
            .filter(|e| e.solvable || !config.solvable_only)
            .collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        sample_zero_one_monotone_games(config.n, config.samples, config.solvable_only, &mut rng)
    }
}

#[derive(Clone, Debug)]
pub struct GameVerdict {
    pub game: Game,
    pub solvable: bool,
    pub reports: Vec<PropertyReport>,
    /// Verdicts of both I4EA modes agree (when cross-checked).
    pub i4ea_modes_agree: Option<bool>,
    /// Permutation-form and coalition-form Shapley values agree.
    pub oracles_agree: bool,
}

impl GameVerdict {
    pub fn passes(&self) -> bool {
        self.reports.iter().all(PropertyReport::holds) && self.i4ea_modes_agree != Some(false) && self.oracles_agree
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub mechanism: String,
    pub games: Vec<GameVerdict>,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &GameVerdict> {
        self.games.iter().filter(|g| !g.passes())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// `(property, games where it holds)` for each checked property.
    pub fn counts(&self) -> Vec<(Property, usize)> {
        self.config
            .properties
            .iter()
            .map(|&p| {
                let holds =
                    self.games.iter().filter(|g| g.reports.iter().any(|r| r.property == p && r.holds())).count();
                (p, holds)
            })
            .collect()
    }
}

pub fn verify_game(
    game: &Game,
    solvable: bool,
    mechanism: &dyn Mechanism,
    config: &SweepConfig,
) -> Result<GameVerdict> {
    let table = OrderTable::build(game, mechanism)?;
    let reports = config.properties.iter().map(|&p| table.check(p, config.i4ea_mode)).collect::<Result<Vec<_>>>()?;
    let i4ea_modes_agree = config.cross_check_i4ea.then(|| {
        let other = match config.i4ea_mode {
            I4eaMode::AdjacentSwaps => I4eaMode::FullPairs,
            I4eaMode::FullPairs => I4eaMode::AdjacentSwaps,
        };
        table.check_i4ea(config.i4ea_mode).holds() == table.check_i4ea(other).holds()
    });
    let oracles_agree = shapley_permutation(game)? == shapley_subset(game);
    Ok(GameVerdict { game: game.clone(), solvable, reports, i4ea_modes_agree, oracles_agree })
}

/// Checks the configured properties of `mechanism` on every game of the sweep.
pub fn sweep(config: &SweepConfig, mechanism: &dyn Mechanism) -> Result<SweepReport> {
    let games = sweep_games(config)?;
    let verdicts =
        games.par_iter().map(|e| verify_game(&e.game, e.solvable, mechanism, config)).collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { config: config.clone(), mechanism: mechanism.name(), games: verdicts })
}
