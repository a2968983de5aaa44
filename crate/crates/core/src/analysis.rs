//! Exact verification of mechanism properties and order-level metrics by
//! enumerating every arrival order.
//!
//! An [`OrderTable`] holds a mechanism's allocation for each of the `n!`
//! orders, indexed by lexicographic rank; every checker reads from it.
//! Counterexamples are the first violation in (order rank, position) order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{factorial, rank_of, symmetric_players, ArrivalOrder, Game, PlayerId, PlayerSet, MAX_ORDER_PLAYERS};

/// Above this many players the anonymity probe uses transpositions only.
const MAX_FULL_RELABELING_PLAYERS: usize = 4;
use crate::mechanisms::{Allocation, Mechanism};
use crate::rational::{format_rational, Rational};
use crate::shapley::{shapley_subset, ShapleyVector};
use crate::structure::{require_zero_one_monotone, structure_of};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Efficiency,
    Oir,
    I4ea,
    Sf,
    Mos,
    CriticalOrdering,
    CriticalSupport,
    Anonymity,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Efficiency,
        Property::Oir,
        Property::Sf,
        Property::I4ea,
        Property::Mos,
        Property::CriticalOrdering,
        Property::CriticalSupport,
        Property::Anonymity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Efficiency => "efficiency",
            Property::Oir => "oir",
            Property::I4ea => "i4ea",
            Property::Sf => "sf",
            Property::Mos => "mos",
            Property::CriticalOrdering => "critical_ordering",
            Property::CriticalSupport => "critical_support",
            Property::Anonymity => "anonymity",
        }
    }

    pub fn parse(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == name.trim().to_ascii_lowercase())
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete, reproducible violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Efficiency {
        order: ArrivalOrder,
        total: Rational,
        expected: Rational,
    },
    NegativeShare {
        order: ArrivalOrder,
        player: PlayerId,
        share: Rational,
    },
    /// `player`'s cumulative share dropped when the `step`-th player arrived.
    Oir {
        order: ArrivalOrder,
        step: usize,
        player: PlayerId,
        before: Rational,
        after: Rational,
    },
    /// `player` gains by arriving at its position in `late` instead of `early`.
    I4ea {
        player: PlayerId,
        early: ArrivalOrder,
        late: ArrivalOrder,
        early_share: Rational,
        late_share: Rational,
    },
    Sf {
        player: PlayerId,
        average: Rational,
        shapley: Rational,
    },
    /// `earlier` arrives first but gets less than `later`.
    Mos {
        order: ArrivalOrder,
        earlier: PlayerId,
        later: PlayerId,
        earlier_share: Rational,
        later_share: Rational,
    },
    CriticalOrdering {
        order: ArrivalOrder,
        earlier: PlayerId,
        later: PlayerId,
        earlier_share: Rational,
        later_share: Rational,
    },
    CriticalSupport {
        order: ArrivalOrder,
        player: Option<PlayerId>,
        reason: String,
    },
    /// Renaming player `i` to `relabeling[i]` in both game and order does not
    /// carry `player`'s share over to its new name.
    Anonymity {
        relabeling: Vec<PlayerId>,
        order: ArrivalOrder,
        player: PlayerId,
        share: Rational,
        relabeled_share: Rational,
    },
}

impl Counterexample {
    pub fn describe(&self, g: &Game) -> String {
        let q = format_rational;
        match self {
            Counterexample::Efficiency { order, total, expected } => {
                format!("order {}: shares sum to {} instead of {}", order.format(g), q(total), q(expected))
            }
            Counterexample::NegativeShare { order, player, share } => {
                format!("order {}: {} gets negative share {}", order.format(g), g.label(*player), q(share))
            }
            Counterexample::Oir { order, step, player, before, after } => format!(
                "order {}: share of {} drops from {} to {} at arrival {}",
                order.format(g),
                g.label(*player),
                q(before),
                q(after),
                step
            ),
            Counterexample::I4ea { player, early, late, early_share, late_share } => format!(
                "{} delays from [{}] (share {}) to [{}] (share {})",
                g.label(*player),
                early.format(g),
                q(early_share),
                late.format(g),
                q(late_share)
            ),
            Counterexample::Sf { player, average, shapley } => {
                format!("{}: average share {} differs from Shapley value {}", g.label(*player), q(average), q(shapley))
            }
            Counterexample::Mos { order, earlier, later, earlier_share, later_share }
            | Counterexample::CriticalOrdering { order, earlier, later, earlier_share, later_share } => format!(
                "order {}: {} arrives before {} but gets {} < {}",
                order.format(g),
                g.label(*earlier),
                g.label(*later),
                q(earlier_share),
                q(later_share)
            ),
            Counterexample::CriticalSupport { order, player, reason } => match player {
                Some(p) => format!("order {}: {}: {}", order.format(g), g.label(*p), reason),
                None => format!("order {}: {}", order.format(g), reason),
            },
            Counterexample::Anonymity { relabeling, order, player, share, relabeled_share } => {
                let renamed = relabeling[player.index()];
                format!(
                    "renaming players to [{}]: {} gets {} on order {}, but as {} gets {}",
                    relabeling.iter().map(|&p| g.label(p)).collect::<Vec<_>>().join(","),
                    g.label(*player),
                    q(share),
                    order.format(g),
                    g.label(renamed),
                    q(relabeled_share)
                )
            }
        }
    }

    pub fn to_json(&self, g: &Game) -> Value {
        let q = |r: &Rational| Value::String(format_rational(r));
        let o = |order: &ArrivalOrder| Value::String(order.format(g));
        let p = |player: &PlayerId| Value::String(g.label(*player).to_string());
        let value = match self {
            Counterexample::Efficiency { order, total, expected } => {
                json!({"kind": "efficiency", "order": o(order), "total": q(total), "expected": q(expected)})
            }
            Counterexample::NegativeShare { order, player, share } => {
                json!({"kind": "negative_share", "order": o(order), "player": p(player), "share": q(share)})
            }
            Counterexample::Oir { order, step, player, before, after } => json!({
                "kind": "oir", "order": o(order), "step": step, "player": p(player),
                "before": q(before), "after": q(after)
            }),
            Counterexample::I4ea { player, early, late, early_share, late_share } => json!({
                "kind": "i4ea", "player": p(player), "early": o(early), "late": o(late),
                "early_share": q(early_share), "late_share": q(late_share)
            }),
            Counterexample::Sf { player, average, shapley } => {
                json!({"kind": "sf", "player": p(player), "average": q(average), "shapley": q(shapley)})
            }
            Counterexample::Mos { order, earlier, later, earlier_share, later_share } => json!({
                "kind": "mos", "order": o(order), "earlier": p(earlier), "later": p(later),
                "earlier_share": q(earlier_share), "later_share": q(later_share)
            }),
            Counterexample::CriticalOrdering { order, earlier, later, earlier_share, later_share } => json!({
                "kind": "critical_ordering", "order": o(order), "earlier": p(earlier), "later": p(later),
                "earlier_share": q(earlier_share), "later_share": q(later_share)
            }),
            Counterexample::CriticalSupport { order, player, reason } => json!({
                "kind": "critical_support", "order": o(order), "player": player.as_ref().map(p), "reason": reason,
            }),
            Counterexample::Anonymity { relabeling, order, player, share, relabeled_share } => json!({
                "kind": "anonymity", "relabeling": relabeling.iter().map(p).collect::<Vec<_>>(), "order": o(order),
                "player": p(player), "share": q(share), "relabeled_share": q(relabeled_share)
            }),
        };
        value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<Counterexample>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    /// Number of elementary comparisons made.
    pub cases: usize,
    /// Number of violated comparisons.
    pub violations: usize,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.verdict {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }

    fn from_violations(property: Property, cases: usize, violations: Vec<Counterexample>) -> Self {
        let count = violations.len();
        let verdict = violations.into_iter().next().map_or(Verdict::Holds, |c| Verdict::Fails(Box::new(c)));
        PropertyReport { property, verdict, cases, violations: count }
    }
}

/// How the early-arrival incentive is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum I4eaMode {
    /// Compare each order with the one where a player arrives one step earlier.
    #[default]
    AdjacentSwaps,
    /// Compare every pair of positions of a player, others' order fixed.
    FullPairs,
}

/// Per-player and total squared distance to the Shapley vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapleyDistance {
    pub per_player: Vec<Rational>,
    pub total: Rational,
}

pub fn shapley_distance(alloc: &Allocation, sv: &ShapleyVector) -> ShapleyDistance {
    let per_player: Vec<Rational> = alloc
        .shares()
        .iter()
        .zip(sv.values())
        .map(|(a, s)| {
            let d = s - a;
            &d * &d
        })
        .collect();
    let total = per_player.iter().sum();
    ShapleyDistance { per_player, total }
}

/// Minimum share among the critical players; `None` when the order creates no value.
pub fn egalitarian_welfare(g: &Game, order: &ArrivalOrder, alloc: &Allocation) -> Result<Option<Rational>> {
    require_zero_one_monotone(g)?;
    Ok(structure_of(g, order.players()).critical.iter().map(|&p| alloc.share(p).clone()).min())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMetrics {
    pub order: ArrivalOrder,
    pub distance: ShapleyDistance,
    pub egalitarian_welfare: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricReport {
    pub mechanism: String,
    pub per_order: Vec<OrderMetrics>,
    /// Mean total Shapley distance over all orders.
    pub expected_distance: Rational,
    /// Mean egalitarian welfare over the orders that create value.
    pub expected_welfare: Option<Rational>,
    pub welfare_orders: usize,
}

impl MetricReport {
    /// True when `self` has weakly larger welfare than `other` on every order.
    pub fn welfare_dominates(&self, other: &MetricReport) -> bool {
        self.per_order.iter().zip(&other.per_order).all(|(a, b)| {
            match (&a.egalitarian_welfare, &b.egalitarian_welfare) {
                (Some(x), Some(y)) => x >= y,
                _ => true,
            }
        })
    }
}

/// A mechanism's allocation on every arrival order of a game.
pub struct OrderTable<'a> {
    game: &'a Game,
    mechanism: &'a dyn Mechanism,
    orders: Vec<ArrivalOrder>,
    allocations: Vec<Allocation>,
}

impl<'a> OrderTable<'a> {
    pub fn build(game: &'a Game, mechanism: &'a dyn Mechanism) -> Result<Self> {
        let n = game.n();
        if n > MAX_ORDER_PLAYERS {
            return Err(Error::TooManyOrders { n, limit: MAX_ORDER_PLAYERS });
        }
        let orders: Vec<ArrivalOrder> = ArrivalOrder::all(n).collect();
        let allocations = orders.iter().map(|o| mechanism.allocate(game, o.players())).collect::<Result<Vec<_>>>()?;
        Ok(OrderTable { game, mechanism, orders, allocations })
    }

    pub fn game(&self) -> &'a Game {
        self.game
    }

    pub fn mechanism_name(&self) -> String {
        self.mechanism.name()
    }

    pub fn orders(&self) -> &[ArrivalOrder] {
        &self.orders
    }

    pub fn allocations(&self) -> &[Allocation] {
        &self.allocations
    }

    pub fn allocation_of(&self, order: &ArrivalOrder) -> &Allocation {
        &self.allocations[order.rank()]
    }

    fn share_in(&self, sequence: &[PlayerId], p: PlayerId) -> &Rational {
        self.allocations[rank_of(sequence)].share(p)
    }

    /// Exact mean share per player over all orders.
    pub fn average_shares(&self) -> Vec<Rational> {
        let count = Rational::from_integer(BigInt::from(self.orders.len()));
        (0..self.game.n()).map(|i| self.allocations.iter().map(|a| &a.shares()[i]).sum::<Rational>() / &count).collect()
    }

    pub fn check_efficiency(&self) -> PropertyReport {
        let expected = self.game.value(self.game.grand_coalition());
        let mut violations = Vec::new();
        for (order, alloc) in self.orders.iter().zip(&self.allocations) {
            if let Some(p) = self.game.players().find(|&p| alloc.share(p) < &Rational::zero()) {
                violations.push(Counterexample::NegativeShare {
                    order: order.clone(),
                    player: p,
                    share: alloc.share(p).clone(),
                });
            }
            let total = alloc.total();
            if &total != expected {
                violations.push(Counterexample::Efficiency { order: order.clone(), total, expected: expected.clone() });
            }
        }
        PropertyReport::from_violations(Property::Efficiency, self.orders.len(), violations)
    }

    /// Cumulative shares of arrived players never drop as more players arrive.
    pub fn check_oir(&self) -> Result<PropertyReport> {
        let n = self.game.n();
        let mut violations = Vec::new();
        let mut cases = 0;
        for (order, full) in self.orders.iter().zip(&self.allocations) {
            let mut previous = Allocation::zeros(n);
            for k in 1..=n {
                let current =
                    if k == n { full.clone() } else { self.mechanism.allocate(self.game, order.prefix(k))? };
                for &p in order.prefix(k - 1) {
                    cases += 1;
                    if current.share(p) < previous.share(p) {
                        violations.push(Counterexample::Oir {
                            order: order.clone(),
                            step: k,
                            player: p,
                            before: previous.share(p).clone(),
                            after: current.share(p).clone(),
                        });
                    }
                }
                previous = current;
            }
        }
        Ok(PropertyReport::from_violations(Property::Oir, cases, violations))
    }

    /// Every early/late pair violating the arrival incentive, ordered by
    /// the late order's rank, then the player's position in it, then the
    /// earlier position.
    pub fn i4ea_violations(&self, mode: I4eaMode) -> (usize, Vec<Counterexample>) {
        let mut violations = Vec::new();
        let mut cases = 0;
        for (late, alloc) in self.orders.iter().zip(&self.allocations) {
            for pos in 1..late.len() {
                let player = late.players()[pos];
                let late_share = alloc.share(player);
                let earliest = match mode {
                    I4eaMode::AdjacentSwaps => pos - 1,
                    I4eaMode::FullPairs => 0,
                };
                for target in (earliest..pos).rev() {
                    let mut early = late.players().to_vec();
                    let moved = early.remove(pos);
                    early.insert(target, moved);
                    cases += 1;
                    let early_share = self.share_in(&early, player);
                    if early_share < late_share {
                        violations.push(Counterexample::I4ea {
                            player,
                            early: ArrivalOrder::new(late.len(), early).expect("permutation"),
                            late: late.clone(),
                            early_share: early_share.clone(),
                            late_share: late_share.clone(),
                        });
                    }
                }
            }
        }
        (cases, violations)
    }

    pub fn check_i4ea(&self, mode: I4eaMode) -> PropertyReport {
        let (cases, violations) = self.i4ea_violations(mode);
        PropertyReport::from_violations(Property::I4ea, cases, violations)
    }

    /// Mean share over orders equals the Shapley value, checked against the
    /// coalition-form oracle.
    pub fn check_sf(&self) -> PropertyReport {
        let sv = shapley_subset(self.game);
        let violations = self
            .average_shares()
            .into_iter()
            .zip(sv.0)
            .enumerate()
            .filter(|(_, (avg, s))| avg != s)
            .map(|(i, (average, shapley))| Counterexample::Sf { player: PlayerId::new(i), average, shapley })
            .collect();
        PropertyReport::from_violations(Property::Sf, self.game.n(), violations)
    }

    /// Among symmetric players the earlier arrival gets a weakly larger share.
    pub fn check_mos(&self) -> PropertyReport {
        let pairs = symmetric_players(self.game);
        let mut violations = Vec::new();
        for (order, alloc) in self.orders.iter().zip(&self.allocations) {
            for &(a, b) in &pairs {
                let (earlier, later) = if order.precedes(a, b) { (a, b) } else { (b, a) };
                if alloc.share(earlier) < alloc.share(later) {
                    violations.push(Counterexample::Mos {
                        order: order.clone(),
                        earlier,
                        later,
                        earlier_share: alloc.share(earlier).clone(),
                        later_share: alloc.share(later).clone(),
                    });
                }
            }
        }
        PropertyReport::from_violations(Property::Mos, self.orders.len() * pairs.len(), violations)
    }

    /// Critical players receive weakly decreasing shares in arrival order.
    pub fn check_critical_ordering(&self) -> Result<PropertyReport> {
        require_zero_one_monotone(self.game)?;
        let mut violations = Vec::new();
        let mut cases = 0;
        for (order, alloc) in self.orders.iter().zip(&self.allocations) {
            let critical = structure_of(self.game, order.players()).critical;
            for pair in critical.windows(2) {
                cases += 1;
                if alloc.share(pair[0]) < alloc.share(pair[1]) {
                    violations.push(Counterexample::CriticalOrdering {
                        order: order.clone(),
                        earlier: pair[0],
                        later: pair[1],
                        earlier_share: alloc.share(pair[0]).clone(),
                        later_share: alloc.share(pair[1]).clone(),
                    });
                }
            }
        }
        Ok(PropertyReport::from_violations(Property::CriticalOrdering, cases, violations))
    }

    /// The unit is split among critical players only, and is already fixed
    /// when the marginal player arrives.
    pub fn check_critical_support(&self) -> Result<PropertyReport> {
        require_zero_one_monotone(self.game)?;
        let mut violations = Vec::new();
        let mut cases = 0;
        for (order, alloc) in self.orders.iter().zip(&self.allocations) {
            let structure = structure_of(self.game, order.players());
            let Some(t) = structure.marginal_position else { continue };
            cases += 1;
            let critical_total: Rational = structure.critical.iter().map(|&p| alloc.share(p)).sum();
            if !critical_total.is_one() {
                violations.push(Counterexample::CriticalSupport {
                    order: order.clone(),
                    player: None,
                    reason: format!("critical players receive {} in total", format_rational(&critical_total)),
                });
            }
            if let Some(p) = self.game.players().find(|&p| !structure.is_critical(p) && !alloc.share(p).is_zero()) {
                violations.push(Counterexample::CriticalSupport {
                    order: order.clone(),
                    player: Some(p),
                    reason: format!("non-critical player receives {}", format_rational(alloc.share(p))),
                });
            }
            let at_marginal = self.mechanism.allocate(self.game, order.prefix(t + 1))?;
            if at_marginal.shares() != alloc.shares() {
                violations.push(Counterexample::CriticalSupport {
                    order: order.clone(),
                    player: None,
                    reason: format!("allocation changes after the marginal player arrives (step {})", t + 1),
                });
            }
        }
        Ok(PropertyReport::from_violations(Property::CriticalSupport, cases, violations))
    }

    /// Probes anonymity on relabeled copies of the game: every relabeling
    /// when `n ≤ 4`, every transposition otherwise. Passing is evidence for
    /// this game only.
    pub fn check_anonymity(&self) -> Result<PropertyReport> {
        let g = self.game;
        let n = g.n();
        let relabelings: Vec<Vec<PlayerId>> = if n <= MAX_FULL_RELABELING_PLAYERS {
            ArrivalOrder::all(n).skip(1).map(|o| o.players().to_vec()).collect()
        } else {
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let mut sigma: Vec<PlayerId> = (0..n).map(PlayerId::new).collect();
                    sigma.swap(i, j);
                    sigma
                })
                .collect()
        };
        let mut cases = 0;
        let mut violations = Vec::new();
        for sigma in relabelings {
            let rename = |s: PlayerSet| s.iter().map(|p| sigma[p.index()]).collect::<PlayerSet>();
            let mut values = vec![Rational::zero(); g.values().len()];
            for s in g.grand_coalition().subsets() {
                values[rename(s).index()] = g.value(s).clone();
            }
            let relabeled = Game::from_values(g.labels(), values)?;
            for (order, alloc) in self.orders.iter().zip(&self.allocations) {
                let seq: Vec<PlayerId> = order.players().iter().map(|p| sigma[p.index()]).collect();
                let moved = self.mechanism.allocate(&relabeled, &seq)?;
                for p in g.players() {
                    cases += 1;
                    let relabeled_share = moved.share(sigma[p.index()]);
                    if relabeled_share != alloc.share(p) {
                        violations.push(Counterexample::Anonymity {
                            relabeling: sigma.clone(),
                            order: order.clone(),
                            player: p,
                            share: alloc.share(p).clone(),
                            relabeled_share: relabeled_share.clone(),
                        });
                    }
                }
            }
        }
        Ok(PropertyReport::from_violations(Property::Anonymity, cases, violations))
    }

    pub fn check(&self, property: Property, mode: I4eaMode) -> Result<PropertyReport> {
        Ok(match property {
            Property::Efficiency => self.check_efficiency(),
            Property::Oir => self.check_oir()?,
            Property::I4ea => self.check_i4ea(mode),
            Property::Sf => self.check_sf(),
            Property::Mos => self.check_mos(),
            Property::CriticalOrdering => self.check_critical_ordering()?,
            Property::CriticalSupport => self.check_critical_support()?,
            Property::Anonymity => self.check_anonymity()?,
        })
    }

    /// Shapley distance per order and welfare of critical players per order
    /// (welfare only for 0-1 monotone games), with exact means.
    pub fn metrics(&self) -> MetricReport {
        let sv = shapley_subset(self.game);
        let with_welfare = self.game.is_zero_one_monotone();
        let per_order: Vec<OrderMetrics> = self
            .orders
            .iter()
            .zip(&self.allocations)
            .map(|(order, alloc)| OrderMetrics {
                order: order.clone(),
                distance: shapley_distance(alloc, &sv),
                egalitarian_welfare: if with_welfare {
                    egalitarian_welfare(self.game, order, alloc).expect("0-1 monotone")
                } else {
                    None
                },
            })
            .collect();
        let count = Rational::from_integer(BigInt::from(per_order.len()));
        let expected_distance = per_order.iter().map(|m| &m.distance.total).sum::<Rational>() / count;
        let welfare: Vec<&Rational> = per_order.iter().filter_map(|m| m.egalitarian_welfare.as_ref()).collect();
        let welfare_orders = welfare.len();
        let expected_welfare = (welfare_orders > 0)
            .then(|| welfare.into_iter().sum::<Rational>() / Rational::from_integer(BigInt::from(welfare_orders)));
        MetricReport {
            mechanism: self.mechanism.name(),
            per_order,
            expected_distance,
            expected_welfare,
            welfare_orders,
        }
    }
}

pub fn expected_metrics(g: &Game, mechanism: &dyn Mechanism) -> Result<MetricReport> {
    Ok(OrderTable::build(g, mechanism)?.metrics())
}

pub fn check_efficiency(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    Ok(OrderTable::build(g, mechanism)?.check_efficiency())
}

pub fn check_oir(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    OrderTable::build(g, mechanism)?.check_oir()
}

pub fn check_i4ea(g: &Game, mechanism: &dyn Mechanism, mode: I4eaMode) -> Result<PropertyReport> {
    Ok(OrderTable::build(g, mechanism)?.check_i4ea(mode))
}

pub fn check_sf(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    Ok(OrderTable::build(g, mechanism)?.check_sf())
}

pub fn check_mos(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    Ok(OrderTable::build(g, mechanism)?.check_mos())
}

pub fn check_critical_ordering(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    OrderTable::build(g, mechanism)?.check_critical_ordering()
}

pub fn check_critical_support(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    OrderTable::build(g, mechanism)?.check_critical_support()
}

pub fn check_anonymity(g: &Game, mechanism: &dyn Mechanism) -> Result<PropertyReport> {
    OrderTable::build(g, mechanism)?.check_anonymity()
}

/// Groups the orders in which `player` is critical: each class holds one
/// order where `player` is marginal plus the orders obtained by swapping it
/// with each earlier critical player. Returns order ranks.
pub fn marginal_swap_classes(g: &Game, player: PlayerId) -> Result<Vec<Vec<usize>>> {
    require_zero_one_monotone(g)?;
    let n = g.n();
    if n > MAX_ORDER_PLAYERS {
        return Err(Error::TooManyOrders { n, limit: MAX_ORDER_PLAYERS });
    }
    let mut classes = Vec::new();
    for rank in 0..factorial(n) {
        let order = ArrivalOrder::from_rank(n, rank);
        let structure = structure_of(g, order.players());
        if structure.marginal != Some(player) {
            continue;
        }
        let mut class = vec![rank];
        for &j in &structure.critical[..structure.critical.len() - 1] {
            let mut seq = order.players().to_vec();
            seq.swap(order.position(j), order.position(player));
            class.push(rank_of(&seq));
        }
        classes.push(class);
    }
    Ok(classes)
}
