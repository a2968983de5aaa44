//! Brute-force oracles shared by the integration tests. They use only the
//! raw value table of a game, never the library's structure or checkers.
#![allow(dead_code)]

use num_traits::{One, Zero};
use onlineshare::{
    parse_game, parse_rational, Allocation, ArrivalOrder, Game, Mechanism, PlayerId, PlayerSet, Rational,
};

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn veto_game() -> Game {
    parse_game(r#"{"players":["A","B","C"],"form":"minimal","minimal_winning":[["A","B"],["A","C"]]}"#).unwrap()
}

pub fn two_route_game() -> Game {
    parse_game(r#"{"players":["A","B","C","D"],"form":"minimal","minimal_winning":[["A","B","C"],["A","B","D"]]}"#)
        .unwrap()
}

/// Three-player unanimity on A, B, C plus the null player D.
pub fn unanimity_with_null() -> Game {
    parse_game(r#"{"players":["A","B","C","D"],"form":"minimal","minimal_winning":[["A","B","C"]]}"#).unwrap()
}

pub fn order(g: &Game, s: &str) -> ArrivalOrder {
    ArrivalOrder::parse(g, s).unwrap()
}

fn set_of(seq: &[usize]) -> PlayerSet {
    PlayerSet::from_bits(seq.iter().fold(0u32, |m, &i| m | 1 << i))
}

fn v(g: &Game, seq: &[usize]) -> Rational {
    g.value(set_of(seq)).clone()
}

/// Every permutation of `0..n` by recursive insertion.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Average marginal contribution over all permutations.
pub fn shapley_oracle(g: &Game) -> Vec<Rational> {
    let n = g.n();
    let perms = permutations(n);
    let mut sv = vec![Rational::zero(); n];
    for p in &perms {
        for k in 0..n {
            sv[p[k]] += v(g, &p[..=k]) - v(g, &p[..k]);
        }
    }
    let count = Rational::from_integer((perms.len() as i64).into());
    sv.into_iter().map(|x| x / &count).collect()
}

/// Critical players of a 0-1 game under an order: the arrivals up to the
/// first winning prefix whose removal from that prefix loses.
pub fn critical_oracle(g: &Game, seq: &[usize]) -> Vec<usize> {
    let Some(t) = (1..=seq.len()).find(|&k| v(g, &seq[..k]).is_one()) else {
        return vec![];
    };
    let prefix = &seq[..t];
    prefix
        .iter()
        .copied()
        .filter(|&j| {
            let rest: Vec<usize> = prefix.iter().copied().filter(|&x| x != j).collect();
            v(g, &rest).is_zero()
        })
        .collect()
}

pub fn ids(seq: &[usize]) -> Vec<PlayerId> {
    seq.iter().map(|&i| PlayerId::new(i)).collect()
}

pub fn allocate(g: &Game, m: &dyn Mechanism, seq: &[usize]) -> Allocation {
    m.allocate(g, &ids(seq)).unwrap()
}

/// Minimum share among critical players; `None` when no value is created.
pub fn welfare_oracle(g: &Game, seq: &[usize], alloc: &Allocation) -> Option<Rational> {
    critical_oracle(g, seq).into_iter().map(|j| alloc.shares()[j].clone()).min()
}

/// Total squared distance to the Shapley vector, averaged over all orders.
pub fn expected_sd_oracle(g: &Game, m: &dyn Mechanism, sv: &[Rational]) -> Rational {
    let perms = permutations(g.n());
    let mut total = Rational::zero();
    for p in &perms {
        let a = allocate(g, m, p);
        for (s, x) in a.shares().iter().zip(sv) {
            let d = s - x;
            total += &d * &d;
        }
    }
    total / Rational::from_integer((perms.len() as i64).into())
}

/// Average shares over all orders equal `sv`.
pub fn sf_oracle(g: &Game, m: &dyn Mechanism, sv: &[Rational]) -> bool {
    let perms = permutations(g.n());
    let mut sum = vec![Rational::zero(); g.n()];
    for p in &perms {
        for (acc, s) in sum.iter_mut().zip(allocate(g, m, p).shares()) {
            *acc += s;
        }
    }
    let count = Rational::from_integer((perms.len() as i64).into());
    sum.iter().zip(sv).all(|(a, x)| a / &count == *x)
}

/// No arrived player's share ever decreases as later players arrive.
pub fn oir_oracle(g: &Game, m: &dyn Mechanism) -> bool {
    permutations(g.n()).iter().all(|p| {
        (1..p.len()).all(|k| {
            let before = allocate(g, m, &p[..k]);
            let after = allocate(g, m, &p[..=k]);
            before.shares().iter().zip(after.shares()).all(|(b, a)| a >= b)
        })
    })
}

/// Moving one step later never raises a player's share.
pub fn adjacent_i4ea_oracle(g: &Game, m: &dyn Mechanism) -> bool {
    permutations(g.n()).iter().all(|p| {
        let here = allocate(g, m, p);
        (0..p.len() - 1).all(|k| {
            let mut later = p.clone();
            later.swap(k, k + 1);
            allocate(g, m, &later).shares()[p[k]] <= here.shares()[p[k]]
        })
    })
}

/// Earlier of two symmetric players never receives less.
pub fn mos_oracle(g: &Game, m: &dyn Mechanism) -> bool {
    let n = g.n();
    let full = (1u32 << n) - 1;
    let symmetric = |i: usize, j: usize| {
        (0..=full)
            .filter(|s| s & (1 << i | 1 << j) == 0)
            .all(|s| g.value(PlayerSet::from_bits(s | 1 << i)) == g.value(PlayerSet::from_bits(s | 1 << j)))
    };
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| symmetric(i, j)).collect();
    permutations(n).iter().all(|p| {
        let a = allocate(g, m, p);
        pairs.iter().all(|&(i, j)| {
            let (first, second) =
                if p.iter().position(|&x| x == i) < p.iter().position(|&x| x == j) { (i, j) } else { (j, i) };
            a.shares()[first] >= a.shares()[second]
        })
    })
}

pub fn one() -> Rational {
    Rational::one()
}
