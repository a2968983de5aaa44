//! Marginal contributions, exact Shapley values and threshold-layer
//! decomposition of monotone games.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{factorial, ArrivalOrder, Game, PlayerId, PlayerSet, MAX_ORDER_PLAYERS};
use crate::rational::Rational;

/// Exact per-player Shapley values, indexed by player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapleyVector(pub Vec<Rational>);

impl ShapleyVector {
    pub fn get(&self, p: PlayerId) -> &Rational {
        &self.0[p.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }
}

/// `v(p^π(i)) − v(p^π(i) ∖ {i})`.
pub fn marginal_contribution(g: &Game, order: &ArrivalOrder, i: PlayerId) -> Rational {
    let upto = order.up_to(i);
    g.value(upto) - g.value(upto.without(i))
}

/// Average marginal contribution over all `n!` arrival orders.
pub fn shapley_permutation(g: &Game) -> Result<ShapleyVector> {
    let n = g.n();
    if n > MAX_ORDER_PLAYERS {
        return Err(Error::TooManyOrders { n, limit: MAX_ORDER_PLAYERS });
    }
    let mut sums = vec![Rational::zero(); n];
    for order in ArrivalOrder::all(n) {
        let mut prefix = PlayerSet::EMPTY;
        for &p in order.players() {
            let next = prefix.with(p);
            sums[p.index()] += g.value(next) - g.value(prefix);
            prefix = next;
        }
    }
    let count = Rational::from_integer(BigInt::from(factorial(n)));
    Ok(ShapleyVector(sums.into_iter().map(|s| s / &count).collect()))
}

/// Coalition form: `Σ_{S ∌ i} |S|!(n−|S|−1)!/n! · (v(S ∪ {i}) − v(S))`.
pub fn shapley_subset(g: &Game) -> ShapleyVector {
    let n = g.n();
    let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
    let n_fact = fact(n);
    let weights: Vec<Rational> = (0..n).map(|s| Rational::new(fact(s) * fact(n - s - 1), n_fact.clone())).collect();
    let all = g.grand_coalition();
    let values = g
        .players()
        .map(|i| all.without(i).subsets().map(|s| (g.value(s.with(i)) - g.value(s)) * &weights[s.len()]).sum())
        .collect();
    ShapleyVector(values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub coefficient: Rational,
    /// Indicator game `1[v(S) ≥ threshold]`.
    pub game: Game,
    pub threshold: Rational,
}

/// `v = Σ coefficient_k · layer_k`, one layer per distinct positive value.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerDecomposition {
    pub layers: Vec<Layer>,
}

impl LayerDecomposition {
    /// Coefficient-weighted sum of the layers, per coalition mask.
    pub fn recompose(&self, n: usize) -> Vec<Rational> {
        (0..1usize << n)
            .map(|m| {
                let s = PlayerSet::from_bits(m as u32);
                self.layers.iter().filter(|l| l.game.wins(s)).map(|l| l.coefficient.clone()).sum()
            })
            .collect()
    }
}

pub fn decompose_layers(g: &Game) -> Result<LayerDecomposition> {
    if !g.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let mut thresholds: Vec<&Rational> = g.values().iter().filter(|v| !v.is_zero()).collect();
    thresholds.sort();
    thresholds.dedup();
    let mut previous = Rational::zero();
    let layers = thresholds
        .into_iter()
        .map(|t| {
            let game = Game::from_fn(g.labels(), |s| if g.value(s) >= t { Rational::one() } else { Rational::zero() })?;
            let coefficient = t - &previous;
            previous = t.clone();
            Ok(Layer { coefficient, game, threshold: t.clone() })
        })
        .collect::<Result<_>>()?;
    Ok(LayerDecomposition { layers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_zero_one_monotone_games, random_monotone_game};
    use crate::game::{parse_game, symmetric_players};
    use crate::rational::{int, parse_rational};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn veto_game() -> Game {
        parse_game(r#"{"players":["A","B","C"],"form":"minimal","minimal_winning":[["A","B"],["A","C"]]}"#).unwrap()
    }

    fn two_route_game() -> Game {
        parse_game(r#"{"players":["A","B","C","D"],"form":"minimal","minimal_winning":[["A","B","C"],["A","B","D"]]}"#)
            .unwrap()
    }

    #[test]
    fn marginal_contributions() {
        let g = veto_game();
        let order = ArrivalOrder::parse(&g, "A,B,C").unwrap();
        assert_eq!(marginal_contribution(&g, &order, g.player("B").unwrap()), int(1));
        assert_eq!(marginal_contribution(&g, &order, g.player("C").unwrap()), int(0));
        let g3 = two_route_game();
        let order = ArrivalOrder::parse(&g3, "C,D,A,B").unwrap();
        assert_eq!(marginal_contribution(&g3, &order, g3.player("B").unwrap()), int(1));
    }

    #[test]
    fn fixture_values() {
        let expected1 = ShapleyVector(vec![q("4/6"), q("1/6"), q("1/6")]);
        assert_eq!(shapley_permutation(&veto_game()).unwrap(), expected1);
        assert_eq!(shapley_subset(&veto_game()), expected1);
        let expected3 = ShapleyVector(vec![q("5/12"), q("5/12"), q("1/12"), q("1/12")]);
        assert_eq!(shapley_permutation(&two_route_game()).unwrap(), expected3);
        assert_eq!(shapley_subset(&two_route_game()), expected3);
    }

    #[test]
    fn trivial_games() {
        let single = Game::from_fn(&["A"], |s| int(s.len() as i64)).unwrap();
        assert_eq!(shapley_permutation(&single).unwrap().0, vec![int(1)]);
        let zero = Game::zero(&["A", "B", "C"]).unwrap();
        assert!(shapley_subset(&zero).0.iter().all(Zero::is_zero));
    }

    #[test]
    fn permutation_form_size_guard() {
        let labels: Vec<String> = (0..9).map(|i| format!("P{i}")).collect();
        let g = Game::zero(&labels).unwrap();
        assert!(matches!(shapley_permutation(&g), Err(Error::TooManyOrders { n: 9, .. })));
        assert_eq!(shapley_subset(&g).0.len(), 9);
    }

    #[test]
    fn oracles_agree_on_all_small_zero_one_games() {
        for n in 1..=4 {
            for e in enumerate_zero_one_monotone_games(n).unwrap() {
                let sv = shapley_subset(&e.game);
                assert_eq!(shapley_permutation(&e.game).unwrap(), sv);
                assert_eq!(sv.total(), int(1));
                for (i, j) in symmetric_players(&e.game) {
                    assert_eq!(sv.get(i), sv.get(j));
                }
            }
        }
    }

    #[test]
    fn null_player_gets_zero() {
        let g3 = two_route_game();
        let with_null =
            Game::from_fn(&["A", "B", "C", "D", "E"], |s| g3.value(PlayerSet::from_bits(s.bits() & 0b1111)).clone())
                .unwrap();
        let sv = shapley_subset(&with_null);
        assert!(sv.0[4].is_zero());
        assert_eq!(&sv.0[..4], shapley_subset(&g3).values());
    }

    #[test]
    fn decomposition_of_zero_one_game_is_identity() {
        let g = veto_game();
        let d = decompose_layers(&g).unwrap();
        assert_eq!(d.layers.len(), 1);
        assert_eq!(d.layers[0].coefficient, int(1));
        assert_eq!(d.layers[0].game, g);
    }

    #[test]
    fn decomposition_gaps() {
        let g = Game::from_fn(&["A", "B"], |s| match s.bits() {
            0 => int(0),
            3 => int(5),
            _ => int(2),
        })
        .unwrap();
        let d = decompose_layers(&g).unwrap();
        let coefficients: Vec<_> = d.layers.iter().map(|l| l.coefficient.clone()).collect();
        assert_eq!(coefficients, [int(2), int(3)]);
        assert_eq!(d.recompose(2), g.values());
        let zero = Game::zero(&["A"]).unwrap();
        assert!(decompose_layers(&zero).unwrap().layers.is_empty());
    }

    #[test]
    fn decomposition_rejects_non_monotone() {
        let g = Game::from_fn(&["A", "B"], |s| if s.bits() == 1 { int(1) } else { int(0) }).unwrap();
        assert!(matches!(decompose_layers(&g), Err(Error::NotMonotone)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_monotone_games(seed in any::<u64>(), n in 1usize..=5) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_monotone_game(n, &mut rng);
            prop_assert!(g.is_monotone());
            let d = decompose_layers(&g).unwrap();
            prop_assert_eq!(d.recompose(n), g.values().to_vec());
            for layer in &d.layers {
                prop_assert!(layer.game.is_zero_one_monotone());
                prop_assert!(layer.coefficient > Rational::zero());
            }
            let sv = shapley_subset(&g);
            prop_assert_eq!(&shapley_permutation(&g).unwrap(), &sv);
            prop_assert_eq!(sv.total(), g.value(g.grand_coalition()).clone());
            // Shapley value is linear across the layers.
            for p in g.players() {
                let layered: Rational = d
                    .layers
                    .iter()
                    .map(|l| &l.coefficient * shapley_subset(&l.game).get(p))
                    .sum();
                prop_assert_eq!(&layered, sv.get(p));
            }
        }
    }
}
