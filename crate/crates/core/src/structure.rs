//! Order-dependent structure of 0-1 monotone games.
//!
//! Everything here works on an arrival *sequence*: either a full order or the
//! arrived prefix of one. Since a local game only ever queries coalitions of
//! arrived players, running on a prefix is the same as running on the local
//! game.

use crate::error::{Error, Result};
use crate::game::{ArrivalOrder, Game, PlayerId, PlayerSet};

/// Marginal and critical players of one arrival sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStructure {
    /// Player whose arrival lifts the prefix value from 0 to 1.
    pub marginal: Option<PlayerId>,
    /// Critical players in arrival order; the marginal player is last.
    pub critical: Vec<PlayerId>,
    /// Position of the marginal player in the sequence.
    pub marginal_position: Option<usize>,
}

impl OrderStructure {
    pub fn creates_value(&self) -> bool {
        self.marginal.is_some()
    }

    pub fn is_critical(&self, p: PlayerId) -> bool {
        self.critical.contains(&p)
    }

    pub fn critical_set(&self) -> PlayerSet {
        self.critical.iter().copied().collect()
    }
}

/// Shortest order prefix that wins once the marginal player joins it, followed
/// by the marginal player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCriticalPrefix {
    pub players: Vec<PlayerId>,
    /// Number of critical players of the local game on `players`.
    pub local_critical_count: usize,
}

impl MinimalCriticalPrefix {
    pub fn marginal(&self) -> PlayerId {
        *self.players.last().expect("prefix contains the marginal player")
    }
}

pub(crate) fn require_zero_one_monotone(g: &Game) -> Result<()> {
    if g.is_zero_one_monotone() {
        Ok(())
    } else {
        Err(Error::NotZeroOneMonotone)
    }
}

/// Structure of an arrival sequence; the game must be 0-1 monotone.
pub(crate) fn structure_of(g: &Game, seq: &[PlayerId]) -> OrderStructure {
    let mut prefix = PlayerSet::EMPTY;
    for (t, &p) in seq.iter().enumerate() {
        prefix = prefix.with(p);
        if g.wins(prefix) {
            let critical = seq[..=t].iter().copied().filter(|&j| !g.wins(prefix.without(j))).collect();
            return OrderStructure { marginal: Some(p), critical, marginal_position: Some(t) };
        }
    }
    OrderStructure { marginal: None, critical: Vec::new(), marginal_position: None }
}

/// Minimal critical prefix by direct scan over prefix lengths.
pub(crate) fn minimal_prefix_of(g: &Game, seq: &[PlayerId]) -> Option<MinimalCriticalPrefix> {
    let structure = structure_of(g, seq);
    let (marginal, t) = (structure.marginal?, structure.marginal_position?);
    let marginal_set = PlayerSet::singleton(marginal);
    let mut prefix = PlayerSet::EMPTY;
    let mut len = t;
    for (k, &p) in seq[..t].iter().enumerate() {
        if g.wins(prefix.union(marginal_set)) {
            len = k;
            break;
        }
        prefix = prefix.with(p);
    }
    let mut players = seq[..len].to_vec();
    players.push(marginal);
    let local_critical_count = structure_of(g, &players).critical.len();
    let mcp = MinimalCriticalPrefix { players, local_critical_count };
    debug_assert_eq!(Some(&mcp), minimal_prefix_by_forward_moves(g, seq).as_ref());
    Some(mcp)
}

/// Replays the procedural reading: move the marginal player one position
/// forward while the player just before it is not critical.
pub fn minimal_prefix_by_forward_moves(g: &Game, seq: &[PlayerId]) -> Option<MinimalCriticalPrefix> {
    let structure = structure_of(g, seq);
    let (marginal, t) = (structure.marginal?, structure.marginal_position?);
    let mut before: Vec<PlayerId> = seq[..t].to_vec();
    while let Some(&last) = before.last() {
        let current: PlayerSet = before.iter().copied().collect::<PlayerSet>().with(marginal);
        if !g.wins(current.without(last)) {
            break;
        }
        // `last` is not critical: the marginal player overtakes it.
        before.pop();
    }
    before.push(marginal);
    let local_critical_count = structure_of(g, &before).critical.len();
    Some(MinimalCriticalPrefix { players: before, local_critical_count })
}

pub fn order_structure(g: &Game, order: &ArrivalOrder) -> Result<OrderStructure> {
    require_zero_one_monotone(g)?;
    Ok(structure_of(g, order.players()))
}

pub fn minimal_critical_prefix(g: &Game, order: &ArrivalOrder) -> Result<MinimalCriticalPrefix> {
    require_zero_one_monotone(g)?;
    minimal_prefix_of(g, order.players()).ok_or(Error::NoValueCreated)
}

/// Outcome of the solvability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solvability {
    Solvable,
    /// `player` has `v({player}) = 0` yet is the only critical member of the
    /// winning `coalition`.
    Unsolvable {
        player: PlayerId,
        coalition: PlayerSet,
    },
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solvability::Solvable)
    }
}

/// Searches players by index and coalitions by mask; the first witness found is reported.
pub fn is_solvable(g: &Game) -> Result<Solvability> {
    require_zero_one_monotone(g)?;
    let all = g.grand_coalition();
    for i in g.players() {
        if g.wins(PlayerSet::singleton(i)) {
            continue;
        }
        let others = all.without(i);
        for rest in others.subsets() {
            let s = rest.with(i);
            if !g.wins(s) || g.wins(rest) {
                continue;
            }
            if rest.iter().all(|j| g.wins(s.without(j))) {
                return Ok(Solvability::Unsolvable { player: i, coalition: s });
            }
        }
    }
    Ok(Solvability::Solvable)
}
