//! Game generators for property sweeps: exhaustive enumeration of small 0-1
//! monotone games and seeded random instances.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::game::{Game, PlayerSet};
use crate::rational::Rational;
use crate::structure::is_solvable;

/// Largest player count for exhaustive enumeration (7581 monotone functions at 5).
pub const MAX_EXHAUSTIVE_PLAYERS: usize = 5;

#[derive(Clone, Debug)]
pub struct EnumeratedGame {
    pub game: Game,
    pub solvable: bool,
}

/// Labels `A`, `B`, ... for `n` generated players.
pub fn player_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect()
}

/// Truth tables of every monotone Boolean function on `n` variables, bit `m`
/// holding the value on coalition mask `m`.
///
/// A function on `n` variables splits into its restrictions `lo` (last player
/// absent) and `hi` (present); it is monotone iff both are and `lo ≤ hi`.
pub(crate) fn monotone_truth_tables(n: usize) -> Vec<u64> {
    let mut tables = vec![0u64, 1u64];
    for k in 0..n {
        let half = 1u32 << k;
        let mut next = Vec::new();
        for &lo in &tables {
            for &hi in &tables {
                if lo & !hi == 0 {
                    next.push(lo | (hi << half));
                }
            }
        }
        next.sort_unstable();
        tables = next;
    }
    tables
}

fn game_from_table(labels: &[String], table: u64) -> Game {
    Game::from_fn(labels, |s| if table >> s.bits() & 1 == 1 { Rational::one() } else { Rational::zero() })
        .expect("generated games are valid")
}

/// Every nonconstant 0-1 monotone game on `n ≤ 5` players, tagged with solvability.
pub fn enumerate_zero_one_monotone_games(n: usize) -> Result<Vec<EnumeratedGame>> {
    if n > MAX_EXHAUSTIVE_PLAYERS {
        return Err(Error::TooManyPlayers { n, limit: MAX_EXHAUSTIVE_PLAYERS });
    }
    let labels = player_labels(n);
    let all_ones = (1u64 << (1u32 << n)) - 1;
    Ok(monotone_truth_tables(n)
        .into_iter()
        .filter(|&t| t != 0 && t != all_ones)
        .map(|t| {
            let game = game_from_table(&labels, t);
            let solvable = is_solvable(&game).expect("0-1 monotone").is_solvable();
            EnumeratedGame { game, solvable }
        })
        .collect())
}

/// `count` distinct games drawn uniformly (seeded) from the nonconstant 0-1
/// monotone games on `n` players, optionally only solvable ones. Above the
/// exhaustive limit games are built from random minimal winning coalitions
/// and may repeat.
pub fn sample_zero_one_monotone_games<R: Rng>(
    n: usize,
    count: usize,
    solvable_only: bool,
    rng: &mut R,
) -> Result<Vec<EnumeratedGame>> {
    if n <= MAX_EXHAUSTIVE_PLAYERS {
        let pool: Vec<EnumeratedGame> =
            enumerate_zero_one_monotone_games(n)?.into_iter().filter(|e| e.solvable || !solvable_only).collect();
        if count >= pool.len() {
            return Ok(pool);
        }
        let mut picked = sample(rng, pool.len(), count).into_vec();
        picked.sort_unstable();
        return Ok(picked.into_iter().map(|i| pool[i].clone()).collect());
    }
    let labels = player_labels(n);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.random_range(1..=n);
        let minimal: Vec<PlayerSet> = (0..k).map(|_| PlayerSet::from_bits(rng.random_range(1..(1u32 << n)))).collect();
        let game = Game::from_minimal_winning(&labels, &minimal)?;
        let solvable = is_solvable(&game)?.is_solvable();
        if solvable || !solvable_only {
            out.push(EnumeratedGame { game, solvable });
        }
    }
    Ok(out)
}

/// Random monotone game with small nonnegative rational values: random raw
/// values are closed upward by taking the maximum over subsets.
pub fn random_monotone_game<R: Rng>(n: usize, rng: &mut R) -> Game {
    let size = 1usize << n;
    let mut raw: Vec<Rational> = (0..size)
        .map(|m| {
            if m == 0 || rng.random_bool(0.3) {
                Rational::zero()
            } else {
                let den: i64 = rng.random_range(1..=4);
                let num: i64 = rng.random_range(0..=12);
                Rational::new(BigInt::from(num), BigInt::from(den))
            }
        })
        .collect();
    for i in 0..n {
        for m in 0..size {
            if m & (1 << i) != 0 && raw[m ^ (1 << i)] > raw[m] {
                raw[m] = raw[m ^ (1 << i)].clone();
            }
        }
    }
    Game::from_values(&player_labels(n), raw).expect("closure of nonnegative values is a game")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn dedekind_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| monotone_truth_tables(n).len()).collect();
        assert_eq!(counts, [2, 3, 6, 20, 168, 7581]);
    }

    #[test]
    fn nonconstant_counts() {
        assert_eq!(enumerate_zero_one_monotone_games(1).unwrap().len(), 1);
        assert_eq!(enumerate_zero_one_monotone_games(2).unwrap().len(), 4);
        assert_eq!(enumerate_zero_one_monotone_games(4).unwrap().len(), 166);
        assert!(enumerate_zero_one_monotone_games(6).is_err());
    }

    #[test]
    fn two_player_games_by_hand() {
        let games = enumerate_zero_one_monotone_games(2).unwrap();
        let mut minimal: Vec<Vec<u32>> =
            games.iter().map(|e| e.game.minimal_winning().into_iter().map(PlayerSet::bits).collect()).collect();
        minimal.sort();
        // {A}, {B}, {A} or {B}, {A} and {B}
        assert_eq!(minimal, vec![vec![1], vec![1, 2], vec![2], vec![3]]);
    }

    // Filter all 2^16 Boolean functions on 4 variables for monotonicity.
    #[test]
    fn four_player_enumeration_matches_brute_force() {
        let brute: Vec<u64> = (0u64..1 << 16)
            .filter(|&t| {
                (0..16u32).all(|m| (0..4).all(|i| m & (1 << i) != 0 || (t >> m & 1) <= (t >> (m | (1 << i)) & 1)))
            })
            .collect();
        assert_eq!(brute.len(), 168);
        assert_eq!(monotone_truth_tables(4), brute);
    }

    #[test]
    fn samples_are_seeded() {
        let draw = |seed| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            sample_zero_one_monotone_games(5, 20, true, &mut rng)
                .unwrap()
                .into_iter()
                .map(|e| e.game)
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert!(draw(7).len() == 20);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let big = sample_zero_one_monotone_games(7, 5, false, &mut rng).unwrap();
        assert!(big.iter().all(|e| e.game.is_zero_one_monotone() && e.game.n() == 7));
    }
}
