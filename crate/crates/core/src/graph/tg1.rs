//! The `TG1` text format.
//!
//! ```text
//! TG1 <n>
//! LABEL <name>          (optional)
//! p0 p1 p2 p3           (n lines, one per crossing)
//! ```
//!
//! `pj` is the global index `4c + slot` of the node linked to slot `j`, or
//! `-1` for a terminal. Lines starting with `#` are comments; blank lines are
//! ignored. Output always uses LF and single spaces.

use std::fmt::Write as _;

use super::{validate, TextileGraph};
use crate::error::{Error, Result};

const MAGIC: &str = "TG1";

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = line[..offset + start].chars().count() + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

pub fn parse(text: &str) -> Result<TextileGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "missing TG1 header"))?;
    let mut htoks = tokens(header);
    match htoks.next() {
        Some((_, MAGIC)) => {}
        Some((col, tok)) => return Err(syntax(hline, col, format!("expected TG1, found {tok:?}"))),
        None => return Err(syntax(hline, 1, "missing TG1 header")),
    }
    let declared: usize = match htoks.next() {
        Some((col, tok)) => tok
            .parse()
            .map_err(|_| syntax(hline, col, format!("invalid crossing count {tok:?}")))?,
        None => return Err(syntax(hline, header.len() + 1, "missing crossing count")),
    };
    if let Some((col, tok)) = htoks.next() {
        return Err(syntax(hline, col, format!("unexpected token {tok:?}")));
    }

    let nodes = 4 * declared;
    let mut label = None;
    let mut peers: Vec<[Option<usize>; 4]> = Vec::with_capacity(declared);
    let mut first = true;
    for (lineno, line) in lines {
        if first {
            first = false;
            if let Some(name) = line.strip_prefix("LABEL ") {
                label = Some(name.to_string());
                continue;
            }
        }
        let mut row = [None; 4];
        let mut count = 0;
        for (col, tok) in tokens(line) {
            if count == 4 {
                return Err(syntax(lineno, col, "more than four peers on a crossing line"));
            }
            let value: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, col, format!("invalid peer {tok:?}")))?;
            row[count] = match value {
                -1 => None,
                v if v >= 0 && (v as u64) < nodes as u64 => Some(v as usize),
                v => {
                    return Err(Error::IndexOutOfRange {
                        line: lineno,
                        peer: v,
                        nodes,
                    })
                }
            };
            count += 1;
        }
        if count < 4 {
            return Err(syntax(
                lineno,
                line.chars().count() + 1,
                format!("expected four peers, found {count}"),
            ));
        }
        peers.push(row);
    }

    if peers.len() != declared {
        return Err(Error::CountMismatch {
            declared,
            found: peers.len(),
        });
    }

    let mut g = TextileGraph::from_peers_unchecked(&peers);
    let report = validate(&g);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    g.set_label(label);
    Ok(g)
}

/// Canonical `TG1` text for a graph using the slot convention.
pub fn serialize(g: &TextileGraph) -> String {
    let n = g.crossing_count();
    let mut out = String::with_capacity(16 + n * 24);
    let _ = writeln!(out, "{MAGIC} {n}");
    if let Some(label) = g.label() {
        let _ = writeln!(out, "LABEL {label}");
    }
    for c in 0..n {
        let p = g.crossing_peers(c).map(|p| p.map_or(-1, |v| v as i64));
        let _ = writeln!(out, "{} {} {} {}", p[0], p[1], p[2], p[3]);
    }
    out
}
