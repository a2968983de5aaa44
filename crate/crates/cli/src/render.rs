use onlineshare::{format_decimal, format_rational, Allocation, Game, PlayerId, PlayerSet, Rational, Result};
use serde_json::Value;

/// `p/q`, followed by ` (0.333)` when decimals are requested.
pub fn rational(r: &Rational, decimals: Option<usize>) -> String {
    match decimals {
        None => format_rational(r),
        Some(k) => format!("{} ({})", format_rational(r), format_decimal(r, k)),
    }
}

/// `A=2/3 B=1/3`, zero shares omitted; `(all zero)` when nothing is allocated.
pub fn shares(game: &Game, alloc: &Allocation, decimals: Option<usize>) -> String {
    let parts: Vec<String> = game
        .players()
        .filter(|&p| *alloc.share(p) != Rational::default())
        .map(|p| format!("{}={}", game.label(p), rational(alloc.share(p), decimals)))
        .collect();
    if parts.is_empty() {
        "(all zero)".into()
    } else {
        parts.join(" ")
    }
}

/// Every player's value, zeros included.
pub fn vector(game: &Game, values: &[Rational], decimals: Option<usize>) -> String {
    game.players()
        .map(|p| format!("{}={}", game.label(p), rational(&values[p.index()], decimals)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn labels(game: &Game, players: &[PlayerId]) -> String {
    players.iter().map(|&p| game.label(p)).collect::<Vec<_>>().join(",")
}

pub fn coalitions(game: &Game, sets: &[PlayerSet]) -> String {
    if sets.is_empty() {
        return "(none)".into();
    }
    sets.iter().map(|&s| format!("{{{}}}", game.format_set(s))).collect::<Vec<_>>().join(" ")
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn csv(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| onlineshare::Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Left-aligned columns separated by two spaces.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
