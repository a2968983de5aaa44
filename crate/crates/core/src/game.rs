//! Players, coalitions, games and arrival orders.
//!
//! Coalitions are bit masks over player indices. Player indices follow the
//! lexicographic order of their labels, fixed when a game is built, so every
//! listing and every enumeration is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Largest game with an explicit value table.
pub const MAX_PLAYERS: usize = 16;
/// Largest game for which all `n!` arrival orders are enumerated.
pub const MAX_ORDER_PLAYERS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(u8);

impl PlayerId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_PLAYERS, "player index {index} out of range");
        PlayerId(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A coalition, stored as a bit mask over player indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerSet(u32);

impl PlayerSet {
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub fn from_bits(bits: u32) -> Self {
        PlayerSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// All players `0..n`.
    pub fn full(n: usize) -> Self {
        PlayerSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(p: PlayerId) -> Self {
        PlayerSet(1 << p.0)
    }

    pub fn contains(self, p: PlayerId) -> bool {
        self.0 & (1 << p.0) != 0
    }

    pub fn with(self, p: PlayerId) -> Self {
        PlayerSet(self.0 | (1 << p.0))
    }

    pub fn without(self, p: PlayerId) -> Self {
        PlayerSet(self.0 & !(1 << p.0))
    }

    pub fn union(self, other: Self) -> Self {
        PlayerSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PlayerSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PlayerSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = PlayerId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(PlayerId(i as u8))
        })
    }

    /// Every subset of `self`, in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = PlayerSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(PlayerSet(cur))
        })
    }
}

impl FromIterator<PlayerId> for PlayerSet {
    fn from_iter<I: IntoIterator<Item = PlayerId>>(iter: I) -> Self {
        iter.into_iter().fold(PlayerSet::EMPTY, PlayerSet::with)
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(PlayerId::index)).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameKind {
    pub monotone: bool,
    pub zero_one: bool,
}

/// A transferable-utility game with an explicit table of `2^n` exact values.
#[derive(Clone, Debug, PartialEq)]
pub struct Game {
    labels: Vec<String>,
    values: Vec<Rational>,
    winning: Vec<bool>,
    kind: GameKind,
}

impl Game {
    /// Builds a game from labels (any order) and a value function over
    /// coalitions of the canonical (sorted) labelling.
    pub fn from_fn<S, F>(labels: &[S], mut value: F) -> Result<Game>
    where
        S: AsRef<str>,
        F: FnMut(PlayerSet) -> Rational,
    {
        let labels = canonical_labels(labels)?;
        let n = labels.len();
        let values = (0..1usize << n).map(|m| value(PlayerSet::from_bits(m as u32))).collect();
        Game::from_parts(labels, values)
    }

    /// Builds a game from already-sorted labels and a value table indexed by mask.
    pub fn from_values<S: AsRef<str>>(labels: &[S], values: Vec<Rational>) -> Result<Game> {
        let canonical = canonical_labels(labels)?;
        if canonical.iter().zip(labels).any(|(c, l)| c != l.as_ref()) {
            return Err(Error::Document("labels must be given in sorted order".into()));
        }
        if values.len() != 1 << canonical.len() {
            return Err(Error::Document(format!(
                "expected {} values, got {}",
                1usize << canonical.len(),
                values.len()
            )));
        }
        Game::from_parts(canonical, values)
    }

    /// 0-1 game winning exactly on supersets of some listed coalition.
    pub fn from_minimal_winning<S: AsRef<str>>(labels: &[S], minimal: &[PlayerSet]) -> Result<Game> {
        Game::from_fn(labels, |s| {
            if minimal.iter().any(|m| m.is_subset_of(s)) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn zero<S: AsRef<str>>(labels: &[S]) -> Result<Game> {
        Game::from_fn(labels, |_| Rational::zero())
    }

    fn from_parts(labels: Vec<String>, values: Vec<Rational>) -> Result<Game> {
        if !values[0].is_zero() {
            return Err(Error::NonzeroEmptyValue(format_rational(&values[0])));
        }
        let n = labels.len();
        for (mask, v) in values.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::NegativeValue {
                    coalition: join_labels(&labels, PlayerSet::from_bits(mask as u32)),
                    value: format_rational(v),
                });
            }
        }
        let monotone =
            (0..values.len()).all(|m| (0..n).all(|i| m & (1 << i) != 0 || values[m | (1 << i)] >= values[m]));
        let zero_one = values.iter().all(|v| v.is_zero() || v.is_one());
        let winning = values.iter().map(|v| v.is_one()).collect();
        Ok(Game { labels, values, winning, kind: GameKind { monotone, zero_one } })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: PlayerId) -> &str {
        &self.labels[p.index()]
    }

    pub fn player(&self, label: &str) -> Option<PlayerId> {
        self.labels.iter().position(|l| l == label).map(PlayerId::new)
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.n()).map(PlayerId::new)
    }

    pub fn grand_coalition(&self) -> PlayerSet {
        PlayerSet::full(self.n())
    }

    pub fn value(&self, s: PlayerSet) -> &Rational {
        &self.values[s.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `v(s) == 1`.
    pub fn wins(&self, s: PlayerSet) -> bool {
        self.winning[s.index()]
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn is_monotone(&self) -> bool {
        self.kind.monotone
    }

    pub fn is_zero_one_monotone(&self) -> bool {
        self.kind.monotone && self.kind.zero_one
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Game> {
        let values = self.values.iter().map(|v| v * factor).collect();
        Game::from_parts(self.labels.clone(), values)
    }

    /// Comma-joined labels of the members, e.g. `A,B`.
    pub fn format_set(&self, s: PlayerSet) -> String {
        join_labels(&self.labels, s)
    }

    pub fn parse_set(&self, text: &str) -> Result<PlayerSet> {
        let mut set = PlayerSet::EMPTY;
        for label in text.split(',').map(str::trim).filter(|l| !l.is_empty()) {
            let p = self.player(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            if set.contains(p) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            set = set.with(p);
        }
        Ok(set)
    }

    /// Inclusion-minimal winning coalitions of a 0-1 monotone game, ascending by mask.
    pub fn minimal_winning(&self) -> Vec<PlayerSet> {
        (0..self.values.len())
            .map(|m| PlayerSet::from_bits(m as u32))
            .filter(|&s| self.wins(s) && s.iter().all(|p| !self.wins(s.without(p))))
            .collect()
    }

    /// Game document in the explicit-table form, for the given players.
    pub fn to_document(&self) -> serde_json::Value {
        let table: serde_json::Map<String, serde_json::Value> = (1..self.values.len())
            .map(|m| {
                let s = PlayerSet::from_bits(m as u32);
                (self.format_set(s), serde_json::Value::String(format_rational(self.value(s))))
            })
            .collect();
        serde_json::json!({ "players": self.labels, "form": "table", "table": table })
    }
}

fn canonical_labels<S: AsRef<str>>(labels: &[S]) -> Result<Vec<String>> {
    if labels.len() > MAX_PLAYERS {
        return Err(Error::TooManyPlayers { n: labels.len(), limit: MAX_PLAYERS });
    }
    let mut sorted: Vec<String> = labels.iter().map(|l| l.as_ref().trim().to_string()).collect();
    if sorted.iter().any(|l| l.is_empty()) {
        return Err(Error::EmptyLabel);
    }
    if let Some(l) = sorted.iter().find(|l| l.contains(',')) {
        return Err(Error::Document(format!("label `{l}` must not contain a comma")));
    }
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateLabel(w[0].clone()));
    }
    Ok(sorted)
}

fn join_labels(labels: &[String], s: PlayerSet) -> String {
    s.iter().map(|p| labels[p.index()].as_str()).collect::<Vec<_>>().join(",")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDocument {
    players: Vec<String>,
    form: String,
    #[serde(default)]
    minimal_winning: Option<Vec<Vec<String>>>,
    #[serde(default)]
    table: Option<BTreeMap<String, serde_json::Value>>,
}

/// A non-fatal observation made while parsing a game document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning(pub String);

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses a game document (JSON), discarding warnings.
pub fn parse_game(document: &str) -> Result<Game> {
    parse_game_with_warnings(document).map(|(g, _)| g)
}

/// Parses a game document in `minimal` or `table` form.
pub fn parse_game_with_warnings(document: &str) -> Result<(Game, Vec<ParseWarning>)> {
    let doc: GameDocument = serde_json::from_str(document).map_err(|e| Error::Document(e.to_string()))?;
    let labels = canonical_labels(&doc.players)?;
    let index = |label: &str| -> Result<PlayerId> {
        labels
            .iter()
            .position(|l| l == label.trim())
            .map(PlayerId::new)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let coalition = |members: &mut dyn Iterator<Item = &str>| -> Result<PlayerSet> {
        let mut s = PlayerSet::EMPTY;
        for label in members {
            let p = index(label)?;
            if s.contains(p) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            s = s.with(p);
        }
        Ok(s)
    };
    let mut warnings = Vec::new();
    match doc.form.as_str() {
        "minimal" => {
            if doc.table.is_some() {
                return Err(Error::Document("`table` given with form `minimal`".into()));
            }
            let lists = doc
                .minimal_winning
                .ok_or_else(|| Error::Document("form `minimal` requires `minimal_winning`".into()))?;
            let mut minimal = Vec::with_capacity(lists.len());
            for list in &lists {
                let s = coalition(&mut list.iter().map(String::as_str))?;
                if s.is_empty() {
                    return Err(Error::NonzeroEmptyValue("1".into()));
                }
                minimal.push(s);
            }
            for (a, &s) in minimal.iter().enumerate() {
                for (b, &t) in minimal.iter().enumerate() {
                    if a != b && t.is_subset_of(s) && (t != s || b < a) {
                        warnings.push(ParseWarning(format!(
                            "minimal_winning is not an antichain: {{{}}} contains {{{}}}",
                            join_labels(&labels, s),
                            join_labels(&labels, t)
                        )));
                        break;
                    }
                }
            }
            let game = Game::from_minimal_winning(&labels, &minimal)?;
            Ok((game, warnings))
        }
        "table" => {
            if doc.minimal_winning.is_some() {
                return Err(Error::Document("`minimal_winning` given with form `table`".into()));
            }
            let table = doc.table.ok_or_else(|| Error::Document("form `table` requires `table`".into()))?;
            let n = labels.len();
            let mut values: Vec<Option<Rational>> = vec![None; 1 << n];
            for (key, raw) in &table {
                let s = coalition(&mut key.split(',').map(str::trim).filter(|l| !l.is_empty()))?;
                let value = json_rational(raw)?;
                if values[s.index()].is_some() {
                    return Err(Error::DuplicateEntry(join_labels(&labels, s)));
                }
                values[s.index()] = Some(value);
            }
            let empty = values[0].take().unwrap_or_else(Rational::zero);
            if !empty.is_zero() {
                return Err(Error::NonzeroEmptyValue(format_rational(&empty)));
            }
            values[0] = Some(empty);
            let values = values
                .into_iter()
                .enumerate()
                .map(|(m, v)| {
                    v.ok_or_else(|| Error::MissingEntry(join_labels(&labels, PlayerSet::from_bits(m as u32))))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((Game::from_parts(labels, values)?, warnings))
        }
        other => Err(Error::Document(format!("unknown form `{other}`"))),
    }
}

fn json_rational(raw: &serde_json::Value) -> Result<Rational> {
    match raw {
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::InvalidNumber(other.to_string())),
    }
}

/// Single-element monotonicity check: `v(S ∪ {i}) ≥ v(S)` for every `S` and `i ∉ S`.
pub fn is_monotone(g: &Game) -> bool {
    g.is_monotone()
}

/// Unordered pairs `(i, j)`, `i < j`, with `v(S ∪ {i}) = v(S ∪ {j})` for all `S ⊆ N ∖ {i, j}`.
pub fn symmetric_players(g: &Game) -> Vec<(PlayerId, PlayerId)> {
    let all = g.grand_coalition();
    let mut pairs = Vec::new();
    for i in g.players() {
        for j in g.players().filter(|&j| j > i) {
            let rest = all.without(i).without(j);
            if rest.subsets().all(|s| g.value(s.with(i)) == g.value(s.with(j))) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// A permutation of all players of a game.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArrivalOrder {
    sequence: Vec<PlayerId>,
    position: Vec<usize>,
}

impl ArrivalOrder {
    pub fn new(n: usize, sequence: Vec<PlayerId>) -> Result<Self> {
        if sequence.len() != n {
            return Err(Error::InvalidOrder(format!("expected {n} players, got {}", sequence.len())));
        }
        let mut position = vec![usize::MAX; n];
        for (pos, p) in sequence.iter().enumerate() {
            let slot = position
                .get_mut(p.index())
                .ok_or_else(|| Error::InvalidOrder(format!("player index {} out of range", p.index())))?;
            if *slot != usize::MAX {
                return Err(Error::InvalidOrder(format!("player index {} repeated", p.index())));
            }
            *slot = pos;
        }
        Ok(ArrivalOrder { sequence, position })
    }

    /// Parses comma-separated labels, e.g. `C,A,D,B`.
    pub fn parse(game: &Game, text: &str) -> Result<Self> {
        let sequence = text
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| game.player(l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        ArrivalOrder::new(game.n(), sequence)
    }

    pub fn identity(n: usize) -> Self {
        ArrivalOrder::new(n, (0..n).map(PlayerId::new).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.sequence
    }

    pub fn position(&self, p: PlayerId) -> usize {
        self.position[p.index()]
    }

    pub fn prefix(&self, k: usize) -> &[PlayerId] {
        &self.sequence[..k]
    }

    pub fn prefix_set(&self, k: usize) -> PlayerSet {
        self.sequence[..k].iter().copied().collect()
    }

    /// `p^π(i)`: the players arriving no later than `p`.
    pub fn up_to(&self, p: PlayerId) -> PlayerSet {
        self.prefix_set(self.position(p) + 1)
    }

    pub fn precedes(&self, a: PlayerId, b: PlayerId) -> bool {
        self.position(a) < self.position(b)
    }

    /// The order with positions `pos` and `pos + 1` exchanged.
    pub fn swapped(&self, pos: usize) -> Self {
        let mut sequence = self.sequence.clone();
        sequence.swap(pos, pos + 1);
        let mut position = self.position.clone();
        position[sequence[pos].index()] = pos;
        position[sequence[pos + 1].index()] = pos + 1;
        ArrivalOrder { sequence, position }
    }

    /// Lexicographic rank among all permutations of `0..n`.
    pub fn rank(&self) -> usize {
        rank_of(&self.sequence)
    }

    pub fn from_rank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<PlayerId> = (0..n).map(PlayerId::new).collect();
        let mut sequence = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k);
            sequence.push(pool.remove(rank / f));
            rank %= f;
        }
        ArrivalOrder::new(n, sequence).unwrap()
    }

    /// All `n!` orders in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = ArrivalOrder> {
        let mut next = Some((0..n).map(PlayerId::new).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            if next_permutation(&mut succ) {
                next = Some(succ);
            }
            Some(ArrivalOrder::new(n, cur).unwrap())
        })
    }

    pub fn format(&self, game: &Game) -> String {
        self.sequence.iter().map(|&p| game.label(p)).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for ArrivalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.sequence.iter().map(|p| p.index())).finish()
    }
}

pub(crate) fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Lexicographic rank of a permutation of `0..len`.
pub(crate) fn rank_of(sequence: &[PlayerId]) -> usize {
    let n = sequence.len();
    let mut rank = 0;
    for (i, p) in sequence.iter().enumerate() {
        let smaller_after = sequence[i + 1..].iter().filter(|q| *q < p).count();
        rank += smaller_after * factorial(n - 1 - i);
    }
    rank
}

fn next_permutation(seq: &mut [PlayerId]) -> bool {
    let Some(i) = (1..seq.len()).rev().find(|&i| seq[i - 1] < seq[i]) else {
        return false;
    };
    let j = (i..seq.len()).rev().find(|&j| seq[j] > seq[i - 1]).unwrap();
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// The game as seen after the first players of an order have arrived.
#[derive(Clone, Debug)]
pub struct LocalGame<'g> {
    parent: &'g Game,
    order: Vec<PlayerId>,
    prefix: PlayerSet,
}

impl<'g> LocalGame<'g> {
    pub fn parent(&self) -> &'g Game {
        self.parent
    }

    /// Arrived players in arrival order.
    pub fn order(&self) -> &[PlayerId] {
        &self.order
    }

    pub fn prefix(&self) -> PlayerSet {
        self.prefix
    }

    /// Local value of `t`; `None` when `t` is not contained in the prefix.
    pub fn value(&self, t: PlayerSet) -> Option<&Rational> {
        t.is_subset_of(self.prefix).then(|| self.parent.value(t))
    }

    /// Standalone game on the arrived players (labels kept), with the map
    /// from its player indices back to the parent's.
    pub fn to_game(&self) -> (Game, Vec<PlayerId>) {
        let members: Vec<PlayerId> = self.prefix.iter().collect();
        let labels: Vec<&str> = members.iter().map(|&p| self.parent.label(p)).collect();
        let game = Game::from_fn(&labels, |s| {
            let lifted: PlayerSet = s.iter().map(|q| members[q.index()]).collect();
            self.parent.value(lifted).clone()
        })
        .expect("restriction of a valid game is valid");
        (game, members)
    }
}

/// Local game on the first `k` players of `order`.
pub fn local_game<'g>(g: &'g Game, order: &ArrivalOrder, k: usize) -> Result<LocalGame<'g>> {
    if k > order.len() {
        return Err(Error::PrefixOutOfRange { k, n: order.len() });
    }
    Ok(LocalGame { parent: g, order: order.prefix(k).to_vec(), prefix: order.prefix_set(k) })
}
