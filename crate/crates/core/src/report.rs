//! Serialization of allocations and per-order tables.
//!
//! Exact rationals are always written as `p/q` strings; decimal renderings
//! are optional extra fields or columns and are never read back.

use serde_json::{json, Value};

use crate::analysis::OrderTable;
use crate::error::{Error, Result};
use crate::game::{ArrivalOrder, Game, PlayerId};
use crate::mechanisms::Allocation;
use crate::rational::{format_decimal, format_rational, parse_rational, Rational};
use crate::shapley::shapley_subset;
use crate::structure::{minimal_prefix_of, structure_of};

/// `"p/q"`, or `{"exact": "p/q", "decimal": "0.333"}` when decimals are requested.
pub fn rational_json(r: &Rational, decimals: Option<usize>) -> Value {
    match decimals {
        None => Value::String(format_rational(r)),
        Some(k) => json!({ "exact": format_rational(r), "decimal": format_decimal(r, k) }),
    }
}

/// `{label: share}` for every player.
pub fn allocation_json(game: &Game, alloc: &Allocation, decimals: Option<usize>) -> Value {
    let map: serde_json::Map<String, Value> =
        game.players().map(|p| (game.label(p).to_string(), rational_json(alloc.share(p), decimals))).collect();
    Value::Object(map)
}

/// One line of a per-order table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRow {
    pub rank: usize,
    pub order: ArrivalOrder,
    pub allocation: Allocation,
    /// Structure columns; present for 0-1 monotone games.
    pub critical: Option<Vec<PlayerId>>,
    pub marginal: Option<PlayerId>,
    pub minimal_prefix: Option<Vec<PlayerId>>,
    pub distance: Rational,
    pub welfare: Option<Rational>,
}

pub fn order_rows(table: &OrderTable) -> Vec<OrderRow> {
    let game = table.game();
    let zero_one = game.is_zero_one_monotone();
    let metrics = table.metrics();
    table
        .orders()
        .iter()
        .zip(table.allocations())
        .zip(metrics.per_order)
        .enumerate()
        .map(|(rank, ((order, alloc), m))| {
            let structure = zero_one.then(|| structure_of(game, order.players()));
            OrderRow {
                rank,
                order: order.clone(),
                allocation: alloc.clone(),
                marginal: structure.as_ref().and_then(|s| s.marginal),
                critical: structure.map(|s| s.critical),
                minimal_prefix: if zero_one {
                    minimal_prefix_of(game, order.players()).map(|m| m.players)
                } else {
                    None
                },
                distance: m.distance.total,
                welfare: m.egalitarian_welfare,
            }
        })
        .collect()
}

fn join(game: &Game, players: &[PlayerId], sep: &str) -> String {
    players.iter().map(|&p| game.label(p)).collect::<Vec<_>>().join(sep)
}

/// Wide CSV: one row per order with a share column per player, followed by
/// critical players, marginal player, minimal critical prefix, Shapley
/// distance and egalitarian welfare. Player lists inside a cell are joined with `-`.
pub fn order_table_csv(game: &Game, rows: &[OrderRow], decimals: Option<usize>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["rank".to_string(), "order".to_string()];
    header.extend(game.labels().iter().cloned());
    if decimals.is_some() {
        header.extend(game.labels().iter().map(|l| format!("{l}_decimal")));
    }
    header.extend(["critical", "marginal", "minimal_critical_prefix", "sd", "ew", "warning"].map(String::from));
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.rank.to_string(), join(game, row.order.players(), "-")];
        record.extend(row.allocation.shares().iter().map(format_rational));
        if let Some(k) = decimals {
            record.extend(row.allocation.shares().iter().map(|s| format_decimal(s, k)));
        }
        record.push(row.critical.as_deref().map(|c| join(game, c, "-")).unwrap_or_default());
        record.push(row.marginal.map(|p| game.label(p).to_string()).unwrap_or_default());
        record.push(row.minimal_prefix.as_deref().map(|c| join(game, c, "-")).unwrap_or_default());
        record.push(format_rational(&row.distance));
        record.push(row.welfare.as_ref().map(format_rational).unwrap_or_default());
        record.push(row.allocation.solvability_warning.to_string());
        w.write_record(&record)?;
    }
    finish(w)
}

/// Reads back the order and exact shares of each row of [`order_table_csv`].
pub fn parse_order_table_csv(game: &Game, text: &str) -> Result<Vec<(ArrivalOrder, Allocation)>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let order_col = column(&header, "order")?;
    let share_cols: Vec<usize> = game.labels().iter().map(|l| column(&header, l)).collect::<Result<_>>()?;
    let warning_col = header.iter().position(|h| h == "warning");
    reader
        .records()
        .map(|record| {
            let record = record?;
            let order = ArrivalOrder::parse(game, &record[order_col].replace('-', ","))?;
            let shares = share_cols.iter().map(|&c| parse_rational(&record[c])).collect::<Result<Vec<_>>>()?;
            let mut alloc = Allocation::from_shares(shares);
            alloc.solvability_warning = warning_col.is_some_and(|c| &record[c] == "true");
            Ok((order, alloc))
        })
        .collect()
}

/// Long CSV: `order,player,share,is_critical,is_marginal`, one line per
/// player per order.
pub fn allocation_csv(game: &Game, rows: &[OrderRow], decimals: Option<usize>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["order", "player", "share"];
    if decimals.is_some() {
        header.push("share_decimal");
    }
    header.extend(["is_critical", "is_marginal"]);
    w.write_record(&header)?;
    for row in rows {
        for p in game.players() {
            let share = row.allocation.share(p);
            let mut record =
                vec![join(game, row.order.players(), "-"), game.label(p).to_string(), format_rational(share)];
            if let Some(k) = decimals {
                record.push(format_decimal(share, k));
            }
            record.push(row.critical.as_ref().is_some_and(|c| c.contains(&p)).to_string());
            record.push((row.marginal == Some(p)).to_string());
            w.write_record(&record)?;
        }
    }
    finish(w)
}

/// Reads back [`allocation_csv`] into per-order allocations, in file order.
pub fn parse_allocation_csv(game: &Game, text: &str) -> Result<Vec<(ArrivalOrder, Allocation)>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let (order_col, player_col, share_col) =
        (column(&header, "order")?, column(&header, "player")?, column(&header, "share")?);
    let mut out: Vec<(ArrivalOrder, Allocation)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let order = ArrivalOrder::parse(game, &record[order_col].replace('-', ","))?;
        let player =
            game.player(&record[player_col]).ok_or_else(|| Error::UnknownLabel(record[player_col].to_string()))?;
        let share = parse_rational(&record[share_col])?;
        if out.last().is_none_or(|(o, _)| o != &order) {
            out.push((order, Allocation::zeros(game.n())));
        }
        out.last_mut().expect("pushed").1.set(player, share);
    }
    Ok(out)
}

fn column(header: &csv::StringRecord, name: &str) -> Result<usize> {
    header.iter().position(|h| h == name).ok_or_else(|| Error::Table(format!("missing column `{name}`")))
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Structured document for a per-order table.
pub fn order_table_json(game: &Game, rows: &[OrderRow], mechanism: &str, decimals: Option<usize>) -> Value {
    let sv = shapley_subset(game);
    let names = |ps: &Option<Vec<PlayerId>>| ps.as_ref().map(|v| v.iter().map(|&p| game.label(p)).collect::<Vec<_>>());
    json!({
        "mechanism": mechanism,
        "players": game.labels(),
        "shapley": game.players().map(|p| rational_json(sv.get(p), decimals)).collect::<Vec<_>>(),
        "rows": rows.iter().map(|r| json!({
            "rank": r.rank,
            "order": r.order.players().iter().map(|&p| game.label(p)).collect::<Vec<_>>(),
            "shares": allocation_json(game, &r.allocation, decimals),
            "critical": names(&r.critical),
            "marginal": r.marginal.map(|p| game.label(p)),
            "minimal_critical_prefix": names(&r.minimal_prefix),
            "sd": rational_json(&r.distance, decimals),
            "ew": r.welfare.as_ref().map(|w| rational_json(w, decimals)),
            "warning": r.allocation.solvability_warning,
        })).collect::<Vec<_>>(),
    })
}
