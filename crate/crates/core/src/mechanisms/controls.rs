//! Reference policies that are *not* meant to be used as mechanisms. They are
//! positive and negative controls for the property checkers.

use num_traits::{One, Zero};

use super::{Allocation, Mechanism};
use crate::error::{Error, Result};
use crate::game::{Game, PlayerId, PlayerSet};
use crate::rational::{format_rational, Rational};
use crate::shapley::shapley_subset;
use crate::structure::{require_zero_one_monotone, structure_of};

/// Splits the unit equally among the critical players, without the
/// minimal-prefix correction. Not incentive compatible.
#[derive(Clone, Copy, Debug, Default)]
pub struct EqualSplit;

impl Mechanism for EqualSplit {
    fn name(&self) -> String {
        "equal-split".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        require_zero_one_monotone(game)?;
        let mut alloc = Allocation::zeros(game.n());
        let critical = structure_of(game, arrived).critical;
        if !critical.is_empty() {
            let share = Rational::new(1.into(), (critical.len() as i64).into());
            for p in critical {
                alloc.set(p, share.clone());
            }
        }
        Ok(alloc)
    }
}

/// The first arrival takes the whole local value.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstArrival;

impl Mechanism for FirstArrival {
    fn name(&self) -> String {
        "first-arrival".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        let mut alloc = Allocation::zeros(game.n());
        if let Some(&first) = arrived.first() {
            let all: PlayerSet = arrived.iter().copied().collect();
            alloc.set(first, game.value(all).clone());
        }
        Ok(alloc)
    }
}

/// First-critical-player until the last arrival, which then takes the whole
/// value. Breaks online individual rationality.
#[derive(Clone, Copy, Debug, Default)]
pub struct LastArrivalTakesAll;

impl Mechanism for LastArrivalTakesAll {
    fn name(&self) -> String {
        "last-arrival-takes-all".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        if arrived.len() < game.n() {
            return super::Rfc.allocate(game, arrived);
        }
        let mut alloc = Allocation::zeros(game.n());
        if let Some(&last) = arrived.last() {
            alloc.set(last, game.value(game.grand_coalition()).clone());
        }
        Ok(alloc)
    }
}

/// Gives every arrived player its Shapley value in the current local game.
#[derive(Clone, Copy, Debug, Default)]
pub struct LocalShapley;

impl Mechanism for LocalShapley {
    fn name(&self) -> String {
        "local-shapley".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        let members: Vec<PlayerId> = arrived.iter().copied().collect::<PlayerSet>().iter().collect();
        let labels: Vec<&str> = members.iter().map(|&p| game.label(p)).collect();
        let local = Game::from_fn(&labels, |s| game.value(s.iter().map(|q| members[q.index()]).collect()).clone())?;
        let sv = shapley_subset(&local);
        let mut alloc = Allocation::zeros(game.n());
        for (q, &p) in members.iter().enumerate() {
            alloc.set(p, sv.0[q].clone());
        }
        Ok(alloc)
    }
}

/// Hand-built sharing rule for the game "the three players A, B, C together
/// win; D is a null player". Shares are fixed when the value appears, keyed
/// by where the null player sits among the arrivals so far:
///
/// | null player    | 1st square | 2nd square | 3rd square |
/// |----------------|------------|------------|------------|
/// | not yet there  | 1 − 2ε     | ε          | ε          |
/// | third          | 1 − ε      | 0          | ε          |
/// | first/second   | 1          | 0          | 0          |
///
/// It is Shapley-fair but rewards a later symmetric player above an earlier one.
#[derive(Clone, Debug)]
pub struct NullPositionFixture {
    pub epsilon: Rational,
}

impl NullPositionFixture {
    pub fn new(epsilon: Rational) -> Result<Self> {
        if epsilon.is_zero() || &epsilon * Rational::from_integer(2.into()) > Rational::one() {
            return Err(Error::InvalidWeights("epsilon must lie in (0, 1/2]".into()));
        }
        Ok(NullPositionFixture { epsilon })
    }

    fn null_player(game: &Game) -> Result<PlayerId> {
        let unsupported =
            |reason: &str| Error::Unsupported { mechanism: "null-position fixture".into(), reason: reason.into() };
        if game.n() != 4 || !game.is_zero_one_monotone() {
            return Err(unsupported("needs a 0-1 game on four players"));
        }
        let all = game.grand_coalition();
        let null: Vec<PlayerId> = game
            .players()
            .filter(|&p| all.without(p).subsets().all(|s| game.value(s) == game.value(s.with(p))))
            .collect();
        match null.as_slice() {
            [d] if game.minimal_winning() == vec![all.without(*d)] => Ok(*d),
            _ => Err(unsupported("needs a three-player unanimity game plus one null player")),
        }
    }
}

impl Mechanism for NullPositionFixture {
    fn name(&self) -> String {
        format!("null-position-fixture(eps={})", format_rational(&self.epsilon))
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        let null = Self::null_player(game)?;
        let mut alloc = Allocation::zeros(game.n());
        let structure = structure_of(game, arrived);
        let Some(t) = structure.marginal_position else {
            return Ok(alloc);
        };
        let upto = &arrived[..=t];
        let squares: Vec<PlayerId> = upto.iter().copied().filter(|&p| p != null).collect();
        let eps = &self.epsilon;
        let one = Rational::one();
        let shares = match upto.iter().position(|&p| p == null) {
            None => [&one - eps - eps, eps.clone(), eps.clone()],
            Some(2) => [&one - eps, Rational::zero(), eps.clone()],
            Some(_) => [one, Rational::zero(), Rational::zero()],
        };
        for (p, s) in squares.into_iter().zip(shares) {
            alloc.set(p, s);
        }
        Ok(alloc)
    }
}
