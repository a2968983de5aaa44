//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails, including by exceeding its runtime
//! budget.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_traits::Zero;
use onlineshare::analysis::Counterexample;
use onlineshare::enumerate::{random_monotone_game, sample_zero_one_monotone_games};
use onlineshare::mechanisms::controls::{EqualSplit, NullPositionFixture};
use onlineshare::sweep::{verify_game, SweepConfig};
use onlineshare::{
    check_anonymity, decompose_layers, egalitarian_welfare, enumerate_zero_one_monotone_games, expected_metrics,
    format_rational, is_solvable, minimal_critical_prefix, order_structure, shapley_permutation, shapley_subset, Evs,
    Game, I4eaMode, Layered, Mechanism, OrderTable, Property, Rational, Rfc, Solvability, WeightFunction, Wvs,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
/// Name, runtime budget in seconds, check.
type Criterion<'a> = (&'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const SAMPLE_SEED: u64 = 20_240_601;
const SAMPLE_SIZE: usize = 200;

fn weight_grids() -> Vec<WeightFunction> {
    ["1,1,1,1,1", "1,1/2,1/4,1/8,1/16", "2,1,1,0,0", "3,2,1,1,1", "1,0,0,0,0"]
        .iter()
        .map(|w| WeightFunction::parse(w).unwrap())
        .collect()
}

/// Every nonconstant solvable 0-1 monotone game on up to four players, then
/// a seeded sample of solvable five-player games.
fn instance_set() -> Vec<Game> {
    let mut games: Vec<Game> = (1..=4)
        .flat_map(|n| enumerate_zero_one_monotone_games(n).unwrap())
        .filter(|e| e.solvable)
        .map(|e| e.game)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    games.extend(sample_zero_one_monotone_games(5, SAMPLE_SIZE, true, &mut rng).unwrap().into_iter().map(|e| e.game));
    games
}

fn shares(g: &Game, m: &dyn Mechanism, o: &str) -> String {
    m.allocate(g, order(g, o).players()).unwrap().format(g)
}

fn labels(g: &Game, players: &[onlineshare::PlayerId]) -> String {
    players.iter().map(|&p| g.label(p)).collect::<Vec<_>>().join(",")
}

fn rfc_rows_on_veto_game() -> Outcome {
    let g = veto_game();
    let rows = [
        ("A,B,C", "A,B", "B", "A=1"),
        ("A,C,B", "A,C", "C", "A=1"),
        ("B,A,C", "B,A", "A", "B=1"),
        ("B,C,A", "A", "A", "A=1"),
        ("C,A,B", "C,A", "A", "C=1"),
        ("C,B,A", "A", "A", "A=1"),
    ];
    for (o, critical, marginal, share) in rows {
        let s = order_structure(&g, &order(&g, o)).map_err(|e| e.to_string())?;
        ensure!(labels(&g, &s.critical) == critical, "{o}: critical {}", labels(&g, &s.critical));
        ensure!(s.marginal.map(|p| g.label(p)) == Some(marginal), "{o}: marginal {:?}", s.marginal);
        ensure!(shares(&g, &Rfc, o) == share, "{o}: shares {}", shares(&g, &Rfc, o));
        let seq: Vec<usize> = order(&g, o).players().iter().map(|p| p.index()).collect();
        let oracle: Vec<_> = critical_oracle(&g, &seq).into_iter().map(onlineshare::PlayerId::new).collect();
        ensure!(oracle == s.critical, "{o}: oracle critical set disagrees");
    }
    Ok(())
}

fn evs_rows_on_two_route_game() -> Outcome {
    let g = two_route_game();
    let rows = [
        ("C,A,B,D", "C,A,B", "A=1/3 B=1/3 C=1/3", "C=1", "C,A,B"),
        ("C,A,D,B", "A,B", "A=2/3 B=1/3", "A=1", "C,A,B"),
        ("C,D,A,B", "A,B", "A=1/2 B=1/2", "A=1", "C,D,A,B"),
    ];
    for (o, critical, evs, rfc, mcp) in rows {
        let ord = order(&g, o);
        let s = order_structure(&g, &ord).map_err(|e| e.to_string())?;
        ensure!(labels(&g, &s.critical) == critical, "{o}: critical {}", labels(&g, &s.critical));
        ensure!(shares(&g, &Evs, o) == evs, "{o}: EVS {}", shares(&g, &Evs, o));
        ensure!(shares(&g, &Rfc, o) == rfc, "{o}: RFC {}", shares(&g, &Rfc, o));
        let prefix = minimal_critical_prefix(&g, &ord).map_err(|e| e.to_string())?;
        ensure!(labels(&g, &prefix.players) == mcp, "{o}: prefix {}", labels(&g, &prefix.players));
    }
    Ok(())
}

fn shapley_fixtures() -> Outcome {
    for (g, expected) in [
        (veto_game(), ["4/6", "1/6", "1/6"].as_slice()),
        (two_route_game(), ["5/12", "5/12", "1/12", "1/12"].as_slice()),
    ] {
        let expected: Vec<Rational> = expected.iter().map(|s| q(s)).collect();
        let perm = shapley_permutation(&g).map_err(|e| e.to_string())?;
        let subset = shapley_subset(&g);
        ensure!(perm.0 == expected, "permutation form {:?}", perm.0);
        ensure!(subset.0 == expected, "subset form {:?}", subset.0);
        ensure!(shapley_oracle(&g) == expected, "test oracle disagrees");
    }
    Ok(())
}

fn solvability() -> Outcome {
    let g = veto_game();
    match is_solvable(&g).map_err(|e| e.to_string())? {
        Solvability::Unsolvable { player, coalition } => {
            // The witness must be a winning coalition whose only critical
            // member is a player that cannot win alone.
            ensure!(g.value(onlineshare::PlayerSet::singleton(player)).is_zero(), "witness player wins alone");
            ensure!(g.wins(coalition), "witness coalition does not win");
            let critical: Vec<_> = coalition.iter().filter(|&j| !g.wins(coalition.without(j))).collect();
            ensure!(critical == vec![player], "witness coalition critical set {:?}", critical);
        }
        Solvability::Solvable => return Err("veto game classified solvable".into()),
    }
    ensure!(is_solvable(&two_route_game()).unwrap().is_solvable(), "two-route game classified unsolvable");
    Ok(())
}

fn wvs_grid_sweep(games: &[Game]) -> Outcome {
    let mut config = SweepConfig::new(5);
    config.properties = vec![Property::Sf, Property::Oir, Property::I4ea, Property::Mos];
    config.cross_check_i4ea = true;
    for w in weight_grids() {
        let m = Wvs::new(w);
        for g in games {
            let verdict = verify_game(g, true, &m, &config).map_err(|e| e.to_string())?;
            for r in &verdict.reports {
                if let Some(c) = r.counterexample() {
                    return Err(format!("{} on {}: {}", m.name(), describe(g), c.describe(g)));
                }
            }
            ensure!(verdict.i4ea_modes_agree == Some(true), "{}: I4EA modes disagree on {}", m.name(), describe(g));
            let sv = shapley_oracle(g);
            ensure!(sf_oracle(g, &m, &sv), "{}: oracle SF fails on {}", m.name(), describe(g));
            ensure!(oir_oracle(g, &m), "{}: oracle OIR fails on {}", m.name(), describe(g));
            ensure!(adjacent_i4ea_oracle(g, &m), "{}: oracle I4EA fails on {}", m.name(), describe(g));
            ensure!(mos_oracle(g, &m), "{}: oracle MOS fails on {}", m.name(), describe(g));
        }
    }
    Ok(())
}

fn describe(g: &Game) -> String {
    let winning: Vec<String> = g.minimal_winning().into_iter().map(|s| format!("{{{}}}", g.format_set(s))).collect();
    format!("n={} minimal winning {}", g.n(), winning.join(" "))
}

fn negative_controls() -> Outcome {
    let g3 = two_route_game();
    let table = OrderTable::build(&g3, &EqualSplit).map_err(|e| e.to_string())?;
    ensure!(!table.check_i4ea(I4eaMode::AdjacentSwaps).holds(), "equal split passes I4EA");
    let (_, violations) = table.i4ea_violations(I4eaMode::AdjacentSwaps);
    let witness = violations.iter().any(|c| {
        matches!(c, Counterexample::I4ea { player, early, late, early_share, late_share }
            if g3.label(*player) == "B"
                && early.format(&g3) == "C,A,B,D"
                && late.format(&g3) == "C,A,D,B"
                && *early_share == q("1/3")
                && *late_share == q("1/2"))
    });
    ensure!(witness, "equal-split witness C,A,B,D -> C,A,D,B not reported");
    ensure!(!adjacent_i4ea_oracle(&g3, &EqualSplit), "oracle finds no equal-split violation");

    let g1 = veto_game();
    let report = OrderTable::build(&g1, &Rfc).unwrap().check_i4ea(I4eaMode::AdjacentSwaps);
    match report.counterexample() {
        Some(Counterexample::I4ea { early, late, .. }) => ensure!(
            early.format(&g1) == "B,A,C" && late.format(&g1) == "B,C,A",
            "RFC witness {} -> {}",
            early.format(&g1),
            late.format(&g1)
        ),
        other => return Err(format!("RFC on the veto game: {other:?}")),
    }

    let g2 = unanimity_with_null();
    let fixture = NullPositionFixture::new(q("1/10")).unwrap();
    let table = OrderTable::build(&g2, &fixture).unwrap();
    ensure!(table.check_sf().holds(), "fixture fails SF");
    ensure!(sf_oracle(&g2, &fixture, &shapley_oracle(&g2)), "oracle: fixture fails SF");
    ensure!(!table.check_mos().holds(), "fixture passes MOS");
    ensure!(!mos_oracle(&g2, &fixture), "oracle: fixture passes MOS");
    Ok(())
}

/// RFC, the weight grids and, where it applies, the null-position fixture.
fn comparison_family(g: &Game) -> Vec<Box<dyn Mechanism>> {
    let mut family: Vec<Box<dyn Mechanism>> = vec![Box::new(Rfc)];
    family.extend(weight_grids().into_iter().map(|w| Box::new(Wvs::new(w)) as Box<dyn Mechanism>));
    let fixture = NullPositionFixture::new(q("1/10")).unwrap();
    if fixture.allocate(g, &[]).is_ok() {
        family.push(Box::new(fixture));
    }
    family
}

fn welfare_dominance(games: &[Game]) -> Outcome {
    for g in games {
        let family = comparison_family(g);
        for p in permutations(g.n()) {
            let evs = allocate(g, &Evs, &p);
            let best = welfare_oracle(g, &p, &evs);
            let ord = onlineshare::ArrivalOrder::new(g.n(), ids(&p)).unwrap();
            ensure!(
                egalitarian_welfare(g, &ord, &evs).unwrap() == best,
                "library welfare disagrees on {}",
                describe(g)
            );
            for m in &family {
                let other = welfare_oracle(g, &p, &allocate(g, m.as_ref(), &p));
                ensure!(best >= other, "{} beats EVS on {} order {}", m.name(), describe(g), ord.format(g));
            }
        }
    }
    Ok(())
}

fn distance_dominance(games: &[Game]) -> Outcome {
    for g in games {
        let sv = shapley_oracle(g);
        let evs = expected_sd_oracle(g, &Evs, &sv);
        ensure!(expected_metrics(g, &Evs).unwrap().expected_distance == evs, "library SD disagrees on {}", describe(g));
        for m in comparison_family(g) {
            // The dominance claim covers anonymous mechanisms; probe it on the small games.
            if g.n() <= 4 {
                let report = check_anonymity(g, m.as_ref()).map_err(|e| e.to_string())?;
                ensure!(report.holds(), "{} is not anonymous on {}", m.name(), describe(g));
            }
            let other = expected_sd_oracle(g, m.as_ref(), &sv);
            ensure!(
                evs <= other,
                "{} has expected SD {} < EVS {} on {}",
                m.name(),
                format_rational(&other),
                format_rational(&evs),
                describe(g)
            );
        }
    }
    Ok(())
}

fn random_monotone_games() -> Vec<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..100).map(|_| random_monotone_game(4, &mut rng)).collect()
}

fn decomposition_linearity(games: &[Game]) -> Outcome {
    for g in games {
        let d = decompose_layers(g).map_err(|e| e.to_string())?;
        ensure!(d.recompose(g.n()) == g.values(), "recomposition differs on {:?}", g.values());
        let table = OrderTable::build(g, &Layered(Evs)).map_err(|e| e.to_string())?;
        ensure!(table.orders().len() == 24, "expected 24 orders");
        ensure!(table.average_shares() == shapley_oracle(g), "layered EVS average differs from Shapley");
    }
    Ok(())
}

fn oracle_equivalence(sets: &[&[Game]]) -> Outcome {
    let mut checked = 0usize;
    for g in sets.iter().flat_map(|s| s.iter()) {
        let perm = shapley_permutation(g).map_err(|e| e.to_string())?;
        ensure!(perm == shapley_subset(g), "oracles disagree on {:?}", g.values());
        ensure!(perm.0 == shapley_oracle(g), "test oracle disagrees on {:?}", g.values());
        checked += 1;
    }
    ensure!(checked > 0, "no games checked");
    Ok(())
}

fn main() {
    let start = Instant::now();
    let instances = instance_set();
    let random = random_monotone_games();
    let fixtures = [veto_game(), two_route_game(), unanimity_with_null()];
    println!(
        "instance set: {} solvable games (exhaustive n<=4, {} sampled at n=5, seed {})",
        instances.len(),
        SAMPLE_SIZE,
        SAMPLE_SEED
    );

    let criteria: Vec<Criterion> = vec![
        ("RFC rows on the veto game", 1, Box::new(rfc_rows_on_veto_game)),
        ("EVS, RFC and prefix rows on the two-route game", 1, Box::new(evs_rows_on_two_route_game)),
        ("Shapley fixtures from both oracles", 1, Box::new(shapley_fixtures)),
        ("solvability classification", 1, Box::new(solvability)),
        ("WVS weight-grid sweep: SF, OIR, I4EA (both modes), MOS", 60, Box::new(|| wvs_grid_sweep(&instances))),
        ("negative controls", 5, Box::new(negative_controls)),
        ("per-order EW of EVS dominates the tested family", 60, Box::new(|| welfare_dominance(&instances))),
        ("expected SD of EVS is minimal in the tested family", 60, Box::new(|| distance_dominance(&instances))),
        ("layer decomposition and layered EVS fairness", 30, Box::new(|| decomposition_linearity(&random))),
        (
            "permutation and subset Shapley agree",
            60,
            Box::new(|| oracle_equivalence(&[&instances, &random, &fixtures])),
        ),
    ];

    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let over_budget = elapsed > Duration::from_secs(*budget);
        let verdict = if outcome.is_ok() && !over_budget { "PASS" } else { "FAIL" };
        let budget_note = if over_budget { ", over budget" } else { "" };
        println!("criterion {:>2}: {verdict} {name} ({:.2?} of {budget}s{budget_note})", i + 1, elapsed);
        if let Err(reason) = outcome {
            println!("              {reason}");
        }
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
