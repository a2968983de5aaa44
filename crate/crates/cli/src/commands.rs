use std::fs;
use std::io::Read;
use std::path::Path;

use onlineshare::report::{
    allocation_csv, allocation_json, order_rows, order_table_csv, order_table_json, rational_json,
};
use onlineshare::sweep::{sweep as run_sweep, SweepConfig, MAX_EXHAUSTIVE_SWEEP_PLAYERS};
use onlineshare::{
    decompose_layers, format_rational, is_solvable, minimal_critical_prefix, online_run, order_structure,
    parse_game_with_warnings, shapley_permutation, shapley_subset, ArrivalOrder, Error, Game, I4eaMode, Layered,
    Mechanism, MechanismKind, OrderTable, Property, PropertyReport, Result, Solvability, MAX_ORDER_PLAYERS,
};
use serde_json::{json, Value};

use crate::render;
use crate::{
    CompareArgs, DecomposeArgs, Format, GameArgs, MechanismArgs, RunArgs, StructureArgs, SweepArgs, TableArgs,
    VerifyArgs,
};

pub struct Outcome {
    pub output: String,
    /// A checked property failed.
    pub failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, failed: false }
    }
}

fn load_game(path: &Path) -> Result<Game> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    let (game, warnings) = parse_game_with_warnings(&text)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(game)
}

/// Runs 0-1 mechanisms directly and general monotone games layer by layer.
fn mechanism_for(game: &Game, kind: MechanismKind) -> Box<dyn Mechanism> {
    if game.is_zero_one_monotone() {
        Box::new(kind)
    } else {
        Box::new(Layered(kind))
    }
}

fn parse_mechanism(args: &MechanismArgs) -> Result<MechanismKind> {
    MechanismKind::parse(&args.mechanism, args.weights.as_deref())
}

fn unsupported_format(command: &str, format: Format) -> Error {
    Error::Unsupported { mechanism: command.into(), reason: format!("output format {format:?} is not available") }
}

pub fn shapley(args: &GameArgs) -> Result<Outcome> {
    let game = load_game(&args.game)?;
    let subset = shapley_subset(&game);
    let oracles = if game.n() <= MAX_ORDER_PLAYERS {
        let perm = shapley_permutation(&game)?;
        assert_eq!(perm, subset, "Shapley oracles disagree");
        vec!["permutation", "subset"]
    } else {
        eprintln!("notice: {} players exceed the permutation oracle; coalition form only", game.n());
        vec!["subset"]
    };
    let d = args.decimals;
    let output = match args.format {
        Format::Text => format!("{}\n", render::vector(&game, subset.values(), d)),
        Format::Json => render::json(&json!({
            "players": game.labels(),
            "shapley": game.players().map(|p| rational_json(subset.get(p), d)).collect::<Vec<_>>(),
            "oracles": oracles,
        })),
        Format::Csv => {
            let mut header = vec!["player".to_string(), "shapley".to_string()];
            if d.is_some() {
                header.push("shapley_decimal".into());
            }
            let rows: Vec<Vec<String>> = game
                .players()
                .map(|p| {
                    let mut row = vec![game.label(p).to_string(), format_rational(subset.get(p))];
                    if let Some(k) = d {
                        row.push(onlineshare::format_decimal(subset.get(p), k));
                    }
                    row
                })
                .collect();
            render::csv(&header, &rows)?
        }
    };
    Ok(Outcome::ok(output))
}

pub fn run(args: &RunArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let kind = parse_mechanism(&args.mechanism)?;
    let order = ArrivalOrder::parse(&game, &args.order)?;
    let mechanism = mechanism_for(&game, kind);
    let trace = online_run(&game, &order, mechanism.as_ref())?;
    let structure = if game.is_zero_one_monotone() { Some(order_structure(&game, &order)?) } else { None };
    let marginal_position = structure.as_ref().and_then(|s| s.marginal_position);
    let warning = trace.steps.last().is_some_and(|s| s.allocation.solvability_warning);
    let d = args.game.decimals;
    let output = match args.game.format {
        Format::Text => {
            let mut rows = Vec::new();
            for (k, step) in trace.steps.iter().enumerate() {
                let mut row = vec![
                    (k + 1).to_string(),
                    format!("+{}", game.label(step.arrived)),
                    render::shares(&game, &step.allocation, d),
                ];
                if let (Some(s), Some(t)) = (&structure, marginal_position) {
                    if t == k {
                        row.push(format!(
                            "[marginal {}; critical {}]",
                            game.label(step.arrived),
                            render::labels(&game, &s.critical)
                        ));
                    }
                }
                rows.push(row);
            }
            let mut out = format!("mechanism: {}\norder: {}\n", mechanism.name(), order.format(&game));
            out.push_str(&render::aligned(&rows));
            if warning {
                out.push_str(
                    "warning: the arrived coalition is unsolvable here; the marginal player receives the whole value\n",
                );
            }
            let last = trace.steps.last().map(|s| render::shares(&game, &s.allocation, d)).unwrap_or_default();
            out.push_str(&format!("final: {last}\n"));
            out
        }
        Format::Json => render::json(&json!({
            "mechanism": mechanism.name(),
            "order": order.players().iter().map(|&p| game.label(p)).collect::<Vec<_>>(),
            "steps": trace.steps.iter().map(|s| json!({
                "arrived": game.label(s.arrived),
                "shares": allocation_json(&game, &s.allocation, d),
            })).collect::<Vec<_>>(),
            "marginal": structure.as_ref().and_then(|s| s.marginal).map(|p| game.label(p)),
            "critical": structure.as_ref().map(|s| s.critical.iter().map(|&p| game.label(p)).collect::<Vec<_>>()),
            "warning": warning,
        })),
        Format::Csv => {
            let mut header = vec!["step".to_string(), "arrived".to_string()];
            header.extend(game.labels().iter().cloned());
            let rows: Vec<Vec<String>> = trace
                .steps
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let mut row = vec![(k + 1).to_string(), game.label(s.arrived).to_string()];
                    row.extend(s.allocation.shares().iter().map(format_rational));
                    row
                })
                .collect();
            render::csv(&header, &rows)?
        }
    };
    Ok(Outcome::ok(output))
}

pub fn table(args: &TableArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let mechanism = mechanism_for(&game, parse_mechanism(&args.mechanism)?);
    let table = OrderTable::build(&game, mechanism.as_ref())?;
    let rows = order_rows(&table);
    let d = args.game.decimals;
    let output = match (args.game.format, args.long) {
        (Format::Csv, false) => order_table_csv(&game, &rows, d)?,
        (Format::Csv, true) => allocation_csv(&game, &rows, d)?,
        (Format::Json, _) => render::json(&order_table_json(&game, &rows, &mechanism.name(), d)),
        (Format::Text, _) => {
            let names = |ps: &Option<Vec<onlineshare::PlayerId>>| {
                ps.as_ref().map(|v| render::labels(&game, v)).unwrap_or_else(|| "-".into())
            };
            let mut lines = vec![["rank", "order", "shares", "critical", "marginal", "prefix", "sd", "ew"]
                .map(String::from)
                .to_vec()];
            for r in &rows {
                lines.push(vec![
                    r.rank.to_string(),
                    r.order.format(&game),
                    render::shares(&game, &r.allocation, d),
                    names(&r.critical),
                    r.marginal.map(|p| game.label(p).to_string()).unwrap_or_else(|| "-".into()),
                    names(&r.minimal_prefix),
                    render::rational(&r.distance, d),
                    r.welfare.as_ref().map(|w| render::rational(w, d)).unwrap_or_else(|| "-".into()),
                ]);
            }
            format!("mechanism: {}\n{}", mechanism.name(), render::aligned(&lines))
        }
    };
    Ok(Outcome::ok(output))
}

enum Check {
    Property(Property),
    Solvable,
}

fn parse_checks(list: &str, allow_solvable: bool) -> Result<Vec<Check>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| match (name, Property::parse(name)) {
            ("solvable", _) if allow_solvable => Ok(Check::Solvable),
            (_, Some(p)) => Ok(Check::Property(p)),
            _ => Err(Error::Document(format!("unknown property `{name}`"))),
        })
        .collect()
}

fn solvability_text(game: &Game, s: &Solvability) -> String {
    match s {
        Solvability::Solvable => "solvable".into(),
        Solvability::Unsolvable { player, coalition } => format!(
            "unsolvable: {} cannot win alone but is the only critical player of {{{}}}",
            game.label(*player),
            game.format_set(*coalition)
        ),
    }
}

fn report_json(game: &Game, r: &PropertyReport) -> Value {
    json!({
        "property": r.property.name(),
        "holds": r.holds(),
        "cases": r.cases,
        "violations": r.violations,
        "counterexample": r.counterexample().map(|c| c.to_json(game)),
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let mechanism = mechanism_for(&game, parse_mechanism(&args.mechanism)?);
    let checks = parse_checks(&args.properties, true)?;
    let mode = if args.strict_i4ea { I4eaMode::FullPairs } else { I4eaMode::AdjacentSwaps };
    let table = OrderTable::build(&game, mechanism.as_ref())?;
    let mut failed = false;
    let mut lines = Vec::new();
    let mut results = Vec::new();
    for check in &checks {
        match check {
            Check::Property(p) => {
                let report = table.check(*p, mode)?;
                failed |= !report.holds();
                let detail = match report.counterexample() {
                    None => format!("holds ({} cases)", report.cases),
                    Some(c) => format!("FAILS {} ({} of {} cases)", c.describe(&game), report.violations, report.cases),
                };
                lines.push(vec![p.name().to_string(), detail]);
                results.push(report_json(&game, &report));
                if *p == Property::I4ea && args.strict_i4ea {
                    let adjacent = table.check_i4ea(I4eaMode::AdjacentSwaps);
                    let agree = adjacent.holds() == report.holds();
                    failed |= !agree;
                    lines.push(vec!["i4ea modes".into(), if agree { "agree".into() } else { "DISAGREE".into() }]);
                    results.push(json!({"property": "i4ea_modes_agree", "holds": agree}));
                }
            }
            Check::Solvable => {
                let s = is_solvable(&game)?;
                failed |= !s.is_solvable();
                let text = solvability_text(&game, &s);
                lines.push(vec![
                    "solvable".into(),
                    if s.is_solvable() { "holds".into() } else { format!("FAILS {text}") },
                ]);
                results.push(json!({"property": "solvable", "holds": s.is_solvable(), "detail": text}));
            }
        }
    }
    let mode_name = if args.strict_i4ea { "full pairs" } else { "adjacent swaps" };
    let output = match args.game.format {
        Format::Text => format!("mechanism: {}; i4ea mode: {mode_name}\n{}", mechanism.name(), render::aligned(&lines)),
        Format::Json => render::json(&json!({
            "mechanism": mechanism.name(),
            "i4ea_mode": mode_name,
            "all_hold": !failed,
            "results": results,
        })),
        Format::Csv => return Err(unsupported_format("verify", Format::Csv)),
    };
    Ok(Outcome { output, failed })
}

/// Mechanism selectors for `compare`; `--weights` fills in a lone bare `wvs`.
fn compare_kinds(args: &CompareArgs) -> Result<Vec<MechanismKind>> {
    let bare_wvs = args.mechanisms.iter().filter(|m| m.trim().eq_ignore_ascii_case("wvs")).count();
    if args.weights.is_some() && bare_wvs != 1 {
        return Err(Error::InvalidWeights("--weights needs exactly one bare `wvs` mechanism".into()));
    }
    args.mechanisms
        .iter()
        .map(|m| {
            let weights = if m.trim().eq_ignore_ascii_case("wvs") { args.weights.as_deref() } else { None };
            MechanismKind::parse(m, weights)
        })
        .collect()
}

pub fn compare(args: &CompareArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let mechanisms: Vec<Box<dyn Mechanism>> =
        compare_kinds(args)?.into_iter().map(|k| mechanism_for(&game, k)).collect();
    let reports =
        mechanisms.iter().map(|m| Ok(OrderTable::build(&game, m.as_ref())?.metrics())).collect::<Result<Vec<_>>>()?;
    let d = args.game.decimals;
    let names: Vec<String> = reports.iter().map(|r| r.mechanism.clone()).collect();
    let dominance: Vec<Vec<bool>> =
        reports.iter().map(|a| reports.iter().map(|b| a.welfare_dominates(b)).collect()).collect();
    let output = match args.game.format {
        Format::Text => {
            let mut summary = vec![["mechanism", "expected sd", "expected ew", "ew orders"].map(String::from).to_vec()];
            for r in &reports {
                summary.push(vec![
                    r.mechanism.clone(),
                    render::rational(&r.expected_distance, d),
                    r.expected_welfare.as_ref().map(|w| render::rational(w, d)).unwrap_or_else(|| "-".into()),
                    format!("{} of {}", r.welfare_orders, r.per_order.len()),
                ]);
            }
            let mut matrix = vec![std::iter::once(String::new()).chain(names.iter().cloned()).collect::<Vec<_>>()];
            for (name, row) in names.iter().zip(&dominance) {
                matrix.push(
                    std::iter::once(name.clone())
                        .chain(row.iter().map(|&b| if b { "yes" } else { "no" }.to_string()))
                        .collect(),
                );
            }
            format!(
                "{}\nper-order ew dominance (row >= column on every order creating value):\n{}",
                render::aligned(&summary),
                render::aligned(&matrix)
            )
        }
        Format::Json => render::json(&json!({
            "ew_averaging": "mean over orders that create value",
            "mechanisms": reports.iter().map(|r| json!({
                "mechanism": r.mechanism,
                "expected_sd": rational_json(&r.expected_distance, d),
                "expected_ew": r.expected_welfare.as_ref().map(|w| rational_json(w, d)),
                "ew_orders": r.welfare_orders,
                "orders": r.per_order.len(),
            })).collect::<Vec<_>>(),
            "ew_dominance": dominance,
        })),
        Format::Csv => {
            let header = ["mechanism", "expected_sd", "expected_ew", "ew_orders"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.mechanism.clone(),
                        format_rational(&r.expected_distance),
                        r.expected_welfare.as_ref().map(format_rational).unwrap_or_default(),
                        r.welfare_orders.to_string(),
                    ]
                })
                .collect();
            render::csv(&header, &rows)?
        }
    };
    Ok(Outcome::ok(output))
}

pub fn decompose(args: &DecomposeArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let decomposition = decompose_layers(&game)?;
    let d = args.game.decimals;
    let applied = match &args.apply {
        None => {
            if args.order.is_some() || args.weights.is_some() {
                return Err(Error::Document("--order and --weights need --apply".into()));
            }
            None
        }
        Some(selector) => {
            let layered = Layered(MechanismKind::parse(selector, args.weights.as_deref())?);
            Some(match &args.order {
                Some(o) => {
                    let order = ArrivalOrder::parse(&game, o)?;
                    (
                        layered.name(),
                        Some(order.format(&game)),
                        layered.allocate(&game, order.players())?.shares().to_vec(),
                    )
                }
                None => (layered.name(), None, OrderTable::build(&game, &layered)?.average_shares()),
            })
        }
    };
    let sv = shapley_subset(&game);
    let output = match args.game.format {
        Format::Text => {
            let mut out = String::new();
            for (k, layer) in decomposition.layers.iter().enumerate() {
                out.push_str(&format!(
                    "layer {}: coefficient {}, threshold {}, minimal winning {}\n",
                    k + 1,
                    render::rational(&layer.coefficient, d),
                    render::rational(&layer.threshold, d),
                    render::coalitions(&game, &layer.game.minimal_winning())
                ));
            }
            if decomposition.layers.is_empty() {
                out.push_str("no layers (zero game)\n");
            }
            if let Some((name, order, shares)) = &applied {
                match order {
                    Some(o) => out.push_str(&format!("{name} on {o}: {}\n", render::vector(&game, shares, d))),
                    None => {
                        out.push_str(&format!(
                            "{name} averaged over all orders: {}\n",
                            render::vector(&game, shares, d)
                        ));
                        let verdict = if shares.as_slice() == sv.values() { "yes" } else { "no" };
                        out.push_str(&format!("equals Shapley value: {verdict}\n"));
                    }
                }
            }
            out
        }
        Format::Json => render::json(&json!({
            "layers": decomposition.layers.iter().map(|l| json!({
                "coefficient": rational_json(&l.coefficient, d),
                "threshold": rational_json(&l.threshold, d),
                "minimal_winning": l.game.minimal_winning().iter().map(|&s| game.format_set(s)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "applied": applied.as_ref().map(|(name, order, shares)| json!({
                "mechanism": name,
                "order": order,
                "shares": game.players().map(|p| rational_json(&shares[p.index()], d)).collect::<Vec<_>>(),
                "equals_shapley": order.is_none().then(|| shares.as_slice() == sv.values()),
            })),
        })),
        Format::Csv => {
            let header = ["layer", "coefficient", "threshold", "minimal_winning"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = decomposition
                .layers
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    vec![
                        (k + 1).to_string(),
                        format_rational(&l.coefficient),
                        format_rational(&l.threshold),
                        l.game
                            .minimal_winning()
                            .iter()
                            .map(|&s| game.format_set(s).replace(',', "-"))
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            render::csv(&header, &rows)?
        }
    };
    Ok(Outcome::ok(output))
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let kind = parse_mechanism(&args.mechanism)?;
    let mut config = SweepConfig::new(args.players);
    config.seed = args.seed;
    config.samples = args.samples;
    config.solvable_only = !args.all_games;
    config.i4ea_mode = if args.strict_i4ea { I4eaMode::FullPairs } else { I4eaMode::AdjacentSwaps };
    config.cross_check_i4ea = args.strict_i4ea;
    config.properties = parse_checks(&args.properties, false)?
        .into_iter()
        .filter_map(|c| match c {
            Check::Property(p) => Some(p),
            Check::Solvable => None,
        })
        .collect();
    let report = run_sweep(&config, &kind)?;
    let mode = if config.n <= MAX_EXHAUSTIVE_SWEEP_PLAYERS {
        "exhaustive".to_string()
    } else {
        format!("sampled {} games", config.samples)
    };
    let header = format!(
        "sweep: {} players, {mode}, seed {}, mechanism {}, {} games{}",
        config.n,
        config.seed,
        report.mechanism,
        report.games.len(),
        if config.solvable_only { " (solvable only)" } else { "" }
    );
    if let Some(dir) = &args.corpus {
        let failures: Vec<_> = report.games.iter().enumerate().filter(|(_, g)| !g.passes()).collect();
        if !failures.is_empty() {
            fs::create_dir_all(dir)?;
        }
        for (k, verdict) in failures {
            let doc = json!({
                "game": verdict.game.to_document(),
                "mechanism": report.mechanism,
                "failures": verdict.reports.iter().filter(|r| !r.holds()).map(|r| report_json(&verdict.game, r)).collect::<Vec<_>>(),
            });
            fs::write(dir.join(format!("game-{k:04}.json")), render::json(&doc))?;
        }
    }
    let failed = !report.all_pass();
    let output = match args.format {
        Format::Text => {
            let mut rows = Vec::new();
            for (k, v) in report.games.iter().enumerate() {
                let status = if v.passes() {
                    "pass".to_string()
                } else {
                    let mut reasons: Vec<String> = v
                        .reports
                        .iter()
                        .filter_map(|r| r.counterexample().map(|c| format!("{}: {}", r.property, c.describe(&v.game))))
                        .collect();
                    if v.i4ea_modes_agree == Some(false) {
                        reasons.push("i4ea modes disagree".into());
                    }
                    if !v.oracles_agree {
                        reasons.push("Shapley oracles disagree".into());
                    }
                    format!("FAIL {}", reasons.join("; "))
                };
                rows.push(vec![
                    k.to_string(),
                    render::coalitions(&v.game, &v.game.minimal_winning()),
                    if v.solvable { "solvable" } else { "unsolvable" }.into(),
                    status,
                ]);
            }
            let counts: Vec<String> =
                report.counts().iter().map(|(p, n)| format!("{p} {n}/{}", report.games.len())).collect();
            format!(
                "{header}\n{}holds: {}\nresult: {}\n",
                render::aligned(&rows),
                counts.join(", "),
                if failed { "FAIL" } else { "all pass" }
            )
        }
        Format::Json => render::json(&json!({
            "players": config.n,
            "seed": config.seed,
            "mode": mode,
            "mechanism": report.mechanism,
            "solvable_only": config.solvable_only,
            "counts": report.counts().iter().map(|(p, n)| json!({"property": p.name(), "holds": n})).collect::<Vec<_>>(),
            "games": report.games.iter().map(|v| json!({
                "minimal_winning": v.game.minimal_winning().iter().map(|&s| v.game.format_set(s)).collect::<Vec<_>>(),
                "solvable": v.solvable,
                "passes": v.passes(),
                "results": v.reports.iter().map(|r| report_json(&v.game, r)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "all_pass": !failed,
        })),
        Format::Csv => return Err(unsupported_format("sweep", Format::Csv)),
    };
    Ok(Outcome { output, failed })
}

pub fn solvable(args: &GameArgs) -> Result<Outcome> {
    let game = load_game(&args.game)?;
    let s = is_solvable(&game)?;
    let output = match args.format {
        Format::Text => format!("{}\n", solvability_text(&game, &s)),
        Format::Json => render::json(&match &s {
            Solvability::Solvable => json!({"solvable": true}),
            Solvability::Unsolvable { player, coalition } => json!({
                "solvable": false,
                "witness": {"player": game.label(*player), "coalition": game.format_set(*coalition)},
            }),
        }),
        Format::Csv => return Err(unsupported_format("solvable", Format::Csv)),
    };
    Ok(Outcome::ok(output))
}

pub fn structure(args: &StructureArgs) -> Result<Outcome> {
    let game = load_game(&args.game.game)?;
    let orders: Vec<ArrivalOrder> = match &args.order {
        Some(o) => vec![ArrivalOrder::parse(&game, o)?],
        None => {
            if game.n() > MAX_ORDER_PLAYERS {
                return Err(Error::TooManyOrders { n: game.n(), limit: MAX_ORDER_PLAYERS });
            }
            ArrivalOrder::all(game.n()).collect()
        }
    };
    let mut rows = Vec::new();
    for order in &orders {
        let s = order_structure(&game, order)?;
        let prefix = if s.creates_value() { Some(minimal_critical_prefix(&game, order)?) } else { None };
        rows.push((order, s, prefix));
    }
    let output = match args.game.format {
        Format::Text => {
            let mut lines =
                vec![["order", "critical", "marginal", "prefix", "local critical"].map(String::from).to_vec()];
            for (order, s, prefix) in &rows {
                lines.push(vec![
                    order.format(&game),
                    if s.critical.is_empty() { "-".into() } else { render::labels(&game, &s.critical) },
                    s.marginal.map(|p| game.label(p).to_string()).unwrap_or_else(|| "-".into()),
                    prefix.as_ref().map(|m| render::labels(&game, &m.players)).unwrap_or_else(|| "-".into()),
                    prefix.as_ref().map(|m| m.local_critical_count.to_string()).unwrap_or_else(|| "-".into()),
                ]);
            }
            render::aligned(&lines)
        }
        Format::Json => render::json(&Value::Array(
            rows.iter()
                .map(|(order, s, prefix)| {
                    json!({
                        "order": order.format(&game),
                        "critical": s.critical.iter().map(|&p| game.label(p)).collect::<Vec<_>>(),
                        "marginal": s.marginal.map(|p| game.label(p)),
                        "minimal_critical_prefix": prefix.as_ref().map(|m| m.players.iter().map(|&p| game.label(p)).collect::<Vec<_>>()),
                        "local_critical_count": prefix.as_ref().map(|m| m.local_critical_count),
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let header = ["order", "critical", "marginal", "minimal_critical_prefix", "local_critical_count"]
                .map(String::from)
                .to_vec();
            let dash = |ps: &[onlineshare::PlayerId]| ps.iter().map(|&p| game.label(p)).collect::<Vec<_>>().join("-");
            let lines: Vec<Vec<String>> = rows
                .iter()
                .map(|(order, s, prefix)| {
                    vec![
                        dash(order.players()),
                        dash(&s.critical),
                        s.marginal.map(|p| game.label(p).to_string()).unwrap_or_default(),
                        prefix.as_ref().map(|m| dash(&m.players)).unwrap_or_default(),
                        prefix.as_ref().map(|m| m.local_critical_count.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            render::csv(&header, &lines)?
        }
    };
    Ok(Outcome::ok(output))
}
