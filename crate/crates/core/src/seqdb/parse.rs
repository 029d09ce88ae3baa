//! Text formats.
//!
//! Database: one sequence per line, items written `name:qty`, itemsets closed
//! by `-1`, the sequence closed by `-2` (a trailing `-1` before `-2` is
//! accepted). Profits: one `name profit` pair per line. `#` starts a comment
//! line in both files.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{ItemId, ProfitTable, QItem, QItemset, QSequence, SequenceDatabase, Utility};
use crate::error::{Error, Result};

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| match l {
            Ok(s) => {
                let t = s.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

fn parse_profits<R: BufRead>(reader: R) -> Result<ProfitTable> {
    let err = |line, msg: String| Error::Parse {
        file: "profits",
        line,
        msg,
    };
    let mut table = ProfitTable::new();
    for (line, text) in content_lines(reader) {
        let text = text?;
        let mut tokens = text.split_whitespace();
        let (Some(name), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(err(
                line,
                format!("expected `name profit`, got `{}`", text.trim()),
            ));
        };
        let profit: i64 = value
            .parse()
            .map_err(|_| err(line, format!("invalid profit `{value}`")))?;
        if profit <= 0 {
            return Err(err(
                line,
                format!("profit of `{name}` must be positive, got {profit}"),
            ));
        }
        table
            .insert(name, profit as Utility)
            .map_err(|e| err(line, e.to_string()))?;
    }
    Ok(table)
}

/// Parses a database and its profit table.
pub fn parse_database<R1: BufRead, R2: BufRead>(db: R1, profits: R2) -> Result<SequenceDatabase> {
    let profits = parse_profits(profits)?;
    let err = |line, msg: String| Error::Parse {
        file: "database",
        line,
        msg,
    };

    let mut sequences = Vec::new();
    for (line, text) in content_lines(db) {
        let text = text?;
        let sid = sequences.len();
        let mut itemsets: Vec<QItemset> = Vec::new();
        let mut current: Vec<QItem> = Vec::new();
        let mut seen: HashSet<ItemId> = HashSet::new();
        let mut terminated = false;
        let mut prev_was_separator = false;

        for token in text.split_whitespace() {
            if terminated {
                return Err(err(line, format!("unexpected token `{token}` after -2")));
            }
            match token {
                "-1" => {
                    if current.is_empty() {
                        return Err(err(line, "empty itemset".into()));
                    }
                    current.sort_by_key(|q| q.item);
                    itemsets.push(QItemset {
                        items: std::mem::take(&mut current),
                    });
                    prev_was_separator = true;
                }
                "-2" => {
                    if !current.is_empty() {
                        current.sort_by_key(|q| q.item);
                        itemsets.push(QItemset {
                            items: std::mem::take(&mut current),
                        });
                    } else if !prev_was_separator {
                        return Err(err(line, "empty sequence".into()));
                    }
                    terminated = true;
                }
                _ => {
                    prev_was_separator = false;
                    let (name, qty) = token
                        .rsplit_once(':')
                        .ok_or_else(|| err(line, format!("expected `name:qty`, got `{token}`")))?;
                    let qty: i64 = qty
                        .parse()
                        .map_err(|_| err(line, format!("invalid quantity in `{token}`")))?;
                    if qty <= 0 || qty > i64::from(u32::MAX) {
                        return Err(err(
                            line,
                            format!("quantity of `{name}` must be in 1..=2^32-1, got {qty}"),
                        ));
                    }
                    let item = profits.id(name).ok_or_else(|| Error::MissingProfit {
                        item: name.to_string(),
                        line,
                    })?;
                    if !seen.insert(item) {
                        return Err(Error::DuplicateItem {
                            sid,
                            item: name.to_string(),
                        });
                    }
                    current.push(QItem::new(item, qty as u32));
                }
            }
        }
        if !terminated {
            return Err(err(line, "sequence not terminated by -2".into()));
        }
        sequences.push(itemsets.into_iter().map(|s| s.items).collect::<Vec<_>>());
    }

    SequenceDatabase::new(sequences, profits)
}

pub fn parse_database_str(db: &str, profits: &str) -> Result<SequenceDatabase> {
    parse_database(db.as_bytes(), profits.as_bytes())
}

pub fn load_database(db: impl AsRef<Path>, profits: impl AsRef<Path>) -> Result<SequenceDatabase> {
    parse_database(
        BufReader::new(File::open(db)?),
        BufReader::new(File::open(profits)?),
    )
}

/// Writes one line per sequence. Projection shells cannot be represented and
/// are skipped.
pub fn write_database<W: Write>(db: &SequenceDatabase, mut out: W) -> Result<()> {
    for seq in db.sequences().iter().filter(|s| !s.is_empty()) {
        write_sequence(seq, db.profits(), &mut out)?;
    }
    Ok(())
}

fn write_sequence<W: Write>(seq: &QSequence, profits: &ProfitTable, out: &mut W) -> Result<()> {
    let mut line = String::new();
    for (k, set) in seq.itemsets().iter().enumerate() {
        if k > 0 {
            line.push_str("-1 ");
        }
        for q in set.items() {
            line.push_str(profits.name(q.item));
            line.push(':');
            line.push_str(&q.quantity.to_string());
            line.push(' ');
        }
    }
    line.push_str("-2");
    writeln!(out, "{line}")?;
    Ok(())
}

pub fn write_profits<W: Write>(profits: &ProfitTable, mut out: W) -> Result<()> {
    for (_, name, p) in profits.iter() {
        writeln!(out, "{name} {p}")?;
    }
    Ok(())
}
