mod common;

use common::*;
use num_bigint::BigInt;
use onlineshare::analysis::marginal_swap_classes;
use onlineshare::{
    check_critical_ordering, check_mos, decompose_layers, is_solvable, Game, Layered, OrderTable, PlayerSet, Rational,
    Rfc, WeightFunction, Wvs,
};
use proptest::prelude::*;

/// A 0-1 monotone game on `n` players from a nonempty list of coalition masks.
fn game_from_masks(n: usize, masks: &[u32]) -> Game {
    let labels: Vec<String> = (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
    let full = (1u32 << n) - 1;
    let minimal: Vec<PlayerSet> = masks.iter().map(|m| PlayerSet::from_bits((m & full).max(1))).collect();
    Game::from_minimal_winning(&labels, &minimal).unwrap()
}

fn zero_one_game() -> impl Strategy<Value = Game> {
    (1usize..=4)
        .prop_flat_map(|n| prop::collection::vec(any::<u32>(), 1..4).prop_map(move |masks| game_from_masks(n, &masks)))
}

fn decreasing_weights() -> impl Strategy<Value = WeightFunction> {
    prop::collection::vec(0i64..6, 4).prop_map(|mut w| {
        w.sort_unstable_by(|a, b| b.cmp(a));
        w[0] += 1;
        WeightFunction::new(w.into_iter().map(|x| Rational::from_integer(BigInt::from(x))).collect()).unwrap()
    })
}

fn values_game(n: usize, values: Vec<u8>) -> Game {
    let labels: Vec<String> = (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
    // Upward max-closure of arbitrary values makes the game monotone.
    Game::from_fn(&labels, |s| {
        let best = s.subsets().filter(|t| !t.is_empty()).map(|t| values[t.bits() as usize]).max().unwrap_or(0);
        Rational::from_integer(BigInt::from(best))
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wvs_satisfies_the_four_properties_on_solvable_games(g in zero_one_game(), w in decreasing_weights()) {
        prop_assume!(is_solvable(&g).unwrap().is_solvable());
        let m = Wvs::new(w);
        prop_assert!(sf_oracle(&g, &m, &shapley_oracle(&g)));
        prop_assert!(oir_oracle(&g, &m));
        prop_assert!(adjacent_i4ea_oracle(&g, &m));
        prop_assert!(mos_oracle(&g, &m));
    }

    #[test]
    fn mos_matches_critical_share_ordering(g in zero_one_game(), w in decreasing_weights()) {
        let m = Wvs::new(w);
        prop_assert_eq!(check_mos(&g, &m).unwrap().holds(), check_critical_ordering(&g, &m).unwrap().holds());
        prop_assert_eq!(check_mos(&g, &Rfc).unwrap().holds(), check_critical_ordering(&g, &Rfc).unwrap().holds());
    }

    #[test]
    fn swap_classes_sum_to_one(g in zero_one_game(), w in decreasing_weights()) {
        prop_assume!(is_solvable(&g).unwrap().is_solvable());
        let m = Wvs::new(w);
        let table = OrderTable::build(&g, &m).unwrap();
        for p in g.players() {
            for class in marginal_swap_classes(&g, p).unwrap() {
                let sum: Rational = class.iter().map(|&r| table.allocations()[r].share(p).clone()).sum();
                prop_assert_eq!(sum, one());
            }
        }
    }

    #[test]
    fn layered_evs_is_shapley_fair(n in 1usize..=4, values in prop::collection::vec(0u8..6, 16)) {
        let g = values_game(n, values);
        let d = decompose_layers(&g).unwrap();
        prop_assert_eq!(d.recompose(n), g.values().to_vec());
        prop_assert!(sf_oracle(&g, &Layered(onlineshare::Evs), &shapley_oracle(&g)));
    }
}
