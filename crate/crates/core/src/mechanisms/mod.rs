//! Value-sharing mechanisms.
//!
//! A [`Mechanism`] maps an arrival sequence (a full order or the arrived
//! prefix of one) to an allocation over all players of the game; players who
//! have not arrived get zero. Running a mechanism on each prefix of an order
//! is what makes it online, see [`online_run`].

pub mod controls;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{ArrivalOrder, Game, PlayerId};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::shapley::decompose_layers;
use crate::structure::{minimal_prefix_of, require_zero_one_monotone, structure_of};

/// Per-player exact shares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    shares: Vec<Rational>,
    /// Set when WVS fell back to giving the marginal player everything.
    pub solvability_warning: bool,
}

impl Allocation {
    pub fn zeros(n: usize) -> Self {
        Allocation { shares: vec![Rational::zero(); n], solvability_warning: false }
    }

    pub fn from_shares(shares: Vec<Rational>) -> Self {
        Allocation { shares, solvability_warning: false }
    }

    pub fn share(&self, p: PlayerId) -> &Rational {
        &self.shares[p.index()]
    }

    pub fn set(&mut self, p: PlayerId, share: Rational) {
        self.shares[p.index()] = share;
    }

    pub fn shares(&self) -> &[Rational] {
        &self.shares
    }

    pub fn total(&self) -> Rational {
        self.shares.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.shares.iter().all(|s| !s.is_negative())
    }

    /// Adds `factor · other` in place.
    pub fn add_scaled(&mut self, other: &Allocation, factor: &Rational) {
        for (s, o) in self.shares.iter_mut().zip(&other.shares) {
            *s += o * factor;
        }
        self.solvability_warning |= other.solvability_warning;
    }

    /// `A=2/3 B=1/3`, listing only players with nonzero shares.
    pub fn format(&self, game: &Game) -> String {
        let parts: Vec<String> = game
            .players()
            .filter(|&p| !self.share(p).is_zero())
            .map(|p| format!("{}={}", game.label(p), format_rational(self.share(p))))
            .collect();
        if parts.is_empty() {
            "(all zero)".to_string()
        } else {
            parts.join(" ")
        }
    }
}

pub trait Mechanism: Send + Sync {
    fn name(&self) -> String;

    /// Allocation for the local game on the arrived players `arrived`, in
    /// arrival order.
    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation>;
}

impl<M: Mechanism + ?Sized> Mechanism for &M {
    fn name(&self) -> String {
        (**self).name()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        (**self).allocate(game, arrived)
    }
}

impl<M: Mechanism + ?Sized> Mechanism for Box<M> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        (**self).allocate(game, arrived)
    }
}

/// Weakly decreasing nonnegative weights `w(1), …, w(len)` with `w(1) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    weights: Vec<Rational>,
}

impl WeightFunction {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let first = weights.first().ok_or_else(|| Error::InvalidWeights("no weights".into()))?;
        if !first.is_positive() {
            return Err(Error::InvalidWeights("w(1) must be positive".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidWeights(format!("negative weight {}", format_rational(w))));
        }
        if let Some(k) = weights.windows(2).position(|p| p[1] > p[0]) {
            return Err(Error::InvalidWeights(format!("w({}) < w({}): weights must not increase", k + 1, k + 2)));
        }
        Ok(WeightFunction { weights })
    }

    /// `w(k) = 1` for `k = 1..=len`.
    pub fn constant(len: usize) -> Self {
        WeightFunction { weights: vec![Rational::one(); len.max(1)] }
    }

    /// Comma-separated rationals, e.g. `1,1,1/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let weights = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        WeightFunction::new(weights)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `w(k)`, 1-based.
    pub fn get(&self, k: usize) -> Result<&Rational> {
        k.checked_sub(1).and_then(|i| self.weights.get(i)).ok_or(Error::WeightOutOfRange { k, len: self.weights.len() })
    }

    /// `Σ_{j=1}^{k} w(j)`.
    pub fn prefix_sum(&self, k: usize) -> Result<Rational> {
        if k > self.weights.len() {
            return Err(Error::WeightOutOfRange { k, len: self.weights.len() });
        }
        Ok(self.weights[..k].iter().sum())
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

/// Rewarding the first critical player.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rfc;

impl Mechanism for Rfc {
    fn name(&self) -> String {
        "rfc".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        require_zero_one_monotone(game)?;
        let mut alloc = Allocation::zeros(game.n());
        if let Some(&first) = structure_of(game, arrived).critical.first() {
            alloc.set(first, Rational::one());
        }
        Ok(alloc)
    }
}

/// Weighted value-sharing.
#[derive(Clone, Debug)]
pub struct Wvs {
    pub weights: WeightFunction,
}

impl Wvs {
    pub fn new(weights: WeightFunction) -> Self {
        Wvs { weights }
    }
}

impl Mechanism for Wvs {
    fn name(&self) -> String {
        format!("wvs({})", self.weights)
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        require_zero_one_monotone(game)?;
        weighted_shares(game, arrived, &self.weights)
    }
}

/// Weighted value-sharing with constant weights.
#[derive(Clone, Copy, Debug, Default)]
pub struct Evs;

impl Mechanism for Evs {
    fn name(&self) -> String {
        "evs".into()
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        require_zero_one_monotone(game)?;
        weighted_shares(game, arrived, &WeightFunction::constant(game.n()))
    }
}

fn weighted_shares(game: &Game, arrived: &[PlayerId], w: &WeightFunction) -> Result<Allocation> {
    let mut alloc = Allocation::zeros(game.n());
    let structure = structure_of(game, arrived);
    let Some(marginal) = structure.marginal else {
        return Ok(alloc);
    };
    let mcp = minimal_prefix_of(game, arrived).expect("value is created");
    let m = structure.critical.len();
    let m_local = mcp.local_critical_count;
    if m == 1 && m_local > 1 {
        // Only reachable on unsolvable games; keep the allocation efficient.
        alloc.set(marginal, Rational::one());
        alloc.solvability_warning = true;
        return Ok(alloc);
    }
    let marginal_share = w.get(m_local)? / w.prefix_sum(m_local)?;
    let rest = Rational::one() - &marginal_share;
    let others = &structure.critical[..m - 1];
    if !others.is_empty() {
        let total = w.prefix_sum(m - 1)?;
        for (t, &j) in others.iter().enumerate() {
            alloc.set(j, w.get(t + 1)? / &total * &rest);
        }
    }
    alloc.set(marginal, marginal_share);
    Ok(alloc)
}

/// Applies a 0-1 mechanism to each threshold layer of a monotone game and
/// sums the layer allocations weighted by the layer coefficients.
#[derive(Clone, Debug)]
pub struct Layered<M>(pub M);

impl<M: Mechanism> Mechanism for Layered<M> {
    fn name(&self) -> String {
        format!("layered {}", self.0.name())
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        let decomposition = decompose_layers(game)?;
        let mut alloc = Allocation::zeros(game.n());
        for layer in &decomposition.layers {
            let part = self.0.allocate(&layer.game, arrived)?;
            alloc.add_scaled(&part, &layer.coefficient);
        }
        Ok(alloc)
    }
}

/// The mechanisms selectable by name: `rfc`, `evs`, `wvs`.
#[derive(Clone, Debug)]
pub enum MechanismKind {
    Rfc,
    Evs,
    Wvs(WeightFunction),
}

impl MechanismKind {
    /// `selector` is `rfc`, `evs` or `wvs`; weights are required for `wvs`
    /// and rejected otherwise. `wvs:1,1/2` carries its weights inline.
    pub fn parse(selector: &str, weights: Option<&str>) -> Result<Self> {
        let (name, inline) = match selector.split_once(':') {
            Some((name, w)) => (name, Some(w)),
            None => (selector, None),
        };
        let weights = match (inline, weights) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidWeights("weights given twice".into()));
            }
            (w, None) | (None, w) => w,
        };
        match (name.trim().to_ascii_lowercase().as_str(), weights) {
            ("rfc", None) => Ok(MechanismKind::Rfc),
            ("evs", None) => Ok(MechanismKind::Evs),
            ("wvs", Some(w)) => Ok(MechanismKind::Wvs(WeightFunction::parse(w)?)),
            ("wvs", None) => Err(Error::InvalidWeights("wvs requires weights".into())),
            ("rfc" | "evs", Some(_)) => {
                Err(Error::InvalidWeights(format!("weights are only accepted for wvs, not {name}")))
            }
            _ => Err(Error::UnknownMechanism(selector.to_string())),
        }
    }
}

impl Mechanism for MechanismKind {
    fn name(&self) -> String {
        match self {
            MechanismKind::Rfc => Rfc.name(),
            MechanismKind::Evs => Evs.name(),
            MechanismKind::Wvs(w) => format!("wvs({w})"),
        }
    }

    fn allocate(&self, game: &Game, arrived: &[PlayerId]) -> Result<Allocation> {
        match self {
            MechanismKind::Rfc => Rfc.allocate(game, arrived),
            MechanismKind::Evs => Evs.allocate(game, arrived),
            MechanismKind::Wvs(w) => {
                require_zero_one_monotone(game)?;
                weighted_shares(game, arrived, w)
            }
        }
    }
}

pub fn rfc_allocate(g: &Game, order: &ArrivalOrder) -> Result<Allocation> {
    Rfc.allocate(g, order.players())
}

pub fn wvs_allocate(g: &Game, order: &ArrivalOrder, w: &WeightFunction) -> Result<Allocation> {
    require_zero_one_monotone(g)?;
    weighted_shares(g, order.players(), w)
}

pub fn evs_allocate(g: &Game, order: &ArrivalOrder) -> Result<Allocation> {
    Evs.allocate(g, order.players())
}

/// Runs a 0-1 mechanism on a general monotone game via threshold layers.
pub fn general_allocate(g: &Game, order: &ArrivalOrder, mechanism: &dyn Mechanism) -> Result<Allocation> {
    Layered(mechanism).allocate(g, order.players())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub arrived: PlayerId,
    /// Cumulative allocation for the local game after this arrival.
    pub allocation: Allocation,
}

/// Cumulative allocations after each arrival of an order.
#[derive(Clone, Debug)]
pub struct OnlineTrace {
    pub order: ArrivalOrder,
    pub steps: Vec<TraceStep>,
}

impl OnlineTrace {
    /// Steps (0-based) at which some player's cumulative share changed.
    pub fn change_steps(&self) -> Vec<usize> {
        let mut previous = self.steps.first().map(|s| Allocation::zeros(s.allocation.shares().len()));
        let mut changes = Vec::new();
        for (k, step) in self.steps.iter().enumerate() {
            if previous.as_ref().is_some_and(|p| p.shares() != step.allocation.shares()) {
                changes.push(k);
            }
            previous = Some(step.allocation.clone());
        }
        changes
    }
}

pub fn online_run(g: &Game, order: &ArrivalOrder, mechanism: &dyn Mechanism) -> Result<OnlineTrace> {
    let steps = (1..=order.len())
        .map(|k| Ok(TraceStep { arrived: order.players()[k - 1], allocation: mechanism.allocate(g, order.prefix(k))? }))
        .collect::<Result<_>>()?;
    Ok(OnlineTrace { order: order.clone(), steps })
}
