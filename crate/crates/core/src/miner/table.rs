//! Utility tables: one row per sequence containing a rule, holding the exact
//! rule utility and the utility still reachable by left/right expansion.

use crate::error::Result;
use crate::rules::{expansion_sets, occurs_in, rule_utility_in_seq, SequentialRule};
use crate::seqdb::{item_utility, sequence_utility, ItemId, SequenceDatabase, SidSet, Utility};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UtRow {
    pub sid: usize,
    /// u(r, s).
    pub iutil: Utility,
    /// Σ u over onlyLeft(r, s).
    pub lutil: Utility,
    /// Σ u over onlyRight(r, s).
    pub rutil: Utility,
    /// Σ u over leftRight(r, s).
    pub lrutil: Utility,
    pub max_antecedent_pos: u32,
    pub min_consequent_pos: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtilityTable {
    pub rule: SequentialRule,
    pub rows: Vec<UtRow>,
}

impl UtilityTable {
    pub fn support_count(&self) -> usize {
        self.rows.len()
    }

    pub fn utility(&self) -> Utility {
        self.rows.iter().map(|r| r.iutil).sum()
    }

    /// Σ(iutil + lutil + rutil + lrutil): bounds the rule and every expansion.
    pub fn bound_all(&self) -> Utility {
        self.rows
            .iter()
            .map(|r| r.iutil + r.lutil + r.rutil + r.lrutil)
            .sum()
    }

    /// Σ(iutil + lutil + lrutil): bounds the rule and its left expansions.
    pub fn bound_left(&self) -> Utility {
        self.rows.iter().map(|r| r.iutil + r.lutil + r.lrutil).sum()
    }

    pub fn sids(&self, width: usize) -> SidSet {
        SidSet::from_sids(width, self.rows.iter().map(|r| r.sid))
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Builds the table from scratch through the rule semantics layer.
pub fn build_utility_table(rule: &SequentialRule, db: &SequenceDatabase) -> Result<UtilityTable> {
    let mut rows = Vec::new();
    for seq in db.sequences() {
        let Some(occ) = occurs_in(rule, seq) else {
            continue;
        };
        let sets = expansion_sets(rule, seq)?;
        let sum = |items: &std::collections::BTreeSet<ItemId>| -> Result<Utility> {
            items
                .iter()
                .map(|&i| item_utility(i, seq, db.profits()))
                .sum()
        };
        rows.push(UtRow {
            sid: seq.sid(),
            iutil: rule_utility_in_seq(rule, seq, db.profits())?,
            lutil: sum(&sets.only_left)?,
            rutil: sum(&sets.only_right)?,
            lrutil: sum(&sets.left_right)?,
            max_antecedent_pos: occ.max_antecedent_pos as u32,
            min_consequent_pos: occ.min_consequent_pos as u32,
        });
    }
    Ok(UtilityTable {
        rule: rule.clone(),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Entry {
    pub item: ItemId,
    pub pos: u32,
    pub util: Utility,
}

/// Per-sequence item entries sorted by item id, with cached sequence
/// utilities. Built once per mining run.
#[derive(Clone, Debug)]
pub struct DbIndex {
    seqs: Vec<Vec<Entry>>,
    su: Vec<Utility>,
}

impl DbIndex {
    pub fn new(db: &SequenceDatabase) -> Self {
        let profits = db.profits();
        let seqs = db
            .sequences()
            .iter()
            .map(|seq| {
                let mut entries: Vec<Entry> = seq
                    .items()
                    .map(|(pos, q)| Entry {
                        item: q.item,
                        pos: pos as u32,
                        util: u64::from(q.quantity) * profits.profit(q.item).unwrap_or(0),
                    })
                    .collect();
                entries.sort_by_key(|e| e.item);
                entries
            })
            .collect();
        let su = db
            .sequences()
            .iter()
            .map(|s| sequence_utility(s, profits))
            .collect();
        Self { seqs, su }
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn sequence_utility(&self, sid: usize) -> Utility {
        self.su[sid]
    }

    pub(crate) fn entries(&self, sid: usize) -> &[Entry] {
        &self.seqs[sid]
    }

    pub(crate) fn find(&self, sid: usize, item: ItemId) -> Option<Entry> {
        let entries = &self.seqs[sid];
        entries
            .binary_search_by_key(&item, |e| e.item)
            .ok()
            .map(|k| entries[k])
    }

    /// Entries with item id strictly greater than `item`.
    pub(crate) fn entries_above(&self, sid: usize, item: ItemId) -> &[Entry] {
        let entries = &self.seqs[sid];
        let start = entries.partition_point(|e| e.item <= item);
        &entries[start..]
    }
}

/// Which expansion buckets an item falls in for a rule whose antecedent max
/// is `max_x`, consequent max is `max_y`, at the given occurrence positions.
/// Rule items themselves never qualify: antecedent items are `<= max_x` and
/// sit at or before `px`; consequent items are `<= max_y` and sit at or after
/// `py`.
#[inline]
fn classify(e: &Entry, max_x: ItemId, max_y: ItemId, px: u32, py: u32) -> (bool, bool) {
    (e.pos < py && e.item > max_x, e.pos > px && e.item > max_y)
}

#[inline]
fn bucket(row: &mut UtRow, class: (bool, bool)) -> Option<&mut Utility> {
    match class {
        (true, true) => Some(&mut row.lrutil),
        (true, false) => Some(&mut row.lutil),
        (false, true) => Some(&mut row.rutil),
        (false, false) => None,
    }
}

/// Row of `rule` in sequence `sid` computed from the index, if it occurs.
pub(crate) fn row_from_index(rule: &SequentialRule, index: &DbIndex, sid: usize) -> Option<UtRow> {
    let mut iutil = 0;
    let mut px = 0;
    for &i in rule.antecedent() {
        let e = index.find(sid, i)?;
        px = px.max(e.pos);
        iutil += e.util;
    }
    let mut py = u32::MAX;
    for &i in rule.consequent() {
        let e = index.find(sid, i)?;
        py = py.min(e.pos);
        iutil += e.util;
    }
    if px >= py {
        return None;
    }
    let (max_x, max_y) = (rule.max_antecedent(), rule.max_consequent());
    let mut row = UtRow {
        sid,
        iutil,
        lutil: 0,
        rutil: 0,
        lrutil: 0,
        max_antecedent_pos: px,
        min_consequent_pos: py,
    };
    for e in index.entries_above(sid, max_x.min(max_y)) {
        if let Some(b) = bucket(&mut row, classify(e, max_x, max_y, px, py)) {
            *b += e.util;
        }
    }
    Some(row)
}

/// Extends one row by `item` on `side`, or `None` when the expanded rule does
/// not occur in that sequence. Items only ever leave the expansion sets, so
/// only the old members are revisited; each one is moved out of its old
/// bucket and into its new one.
pub(crate) fn extend_row(
    row: &UtRow,
    rule: &SequentialRule,
    item: ItemId,
    side: Side,
    index: &DbIndex,
) -> Option<UtRow> {
    let (max_x, max_y) = (rule.max_antecedent(), rule.max_consequent());
    let (px, py) = (row.max_antecedent_pos, row.min_consequent_pos);
    let added = index.find(row.sid, item)?;
    let old_class = classify(&added, max_x, max_y, px, py);
    let (new_max_x, new_max_y, new_px, new_py) = match side {
        Side::Left if old_class.0 => (item, max_y, px.max(added.pos), py),
        Side::Right if old_class.1 => (max_x, item, px, py.min(added.pos)),
        _ => return None,
    };

    let mut next = UtRow {
        iutil: row.iutil + added.util,
        max_antecedent_pos: new_px,
        min_consequent_pos: new_py,
        ..*row
    };
    *bucket(&mut next, old_class).expect("eligible item has a bucket") -= added.util;
    for e in index.entries_above(row.sid, max_x.min(max_y)) {
        if e.item == item {
            continue;
        }
        let before = classify(e, max_x, max_y, px, py);
        let after = classify(e, new_max_x, new_max_y, new_px, new_py);
        if before != after {
            if let Some(b) = bucket(&mut next, before) {
                *b -= e.util;
            }
            if let Some(b) = bucket(&mut next, after) {
                *b += e.util;
            }
        }
    }
    Some(next)
}

/// Table of the rule expanded by `item` on `side`, derived from `table`
/// without rescanning the database. Rows where the expansion is impossible
/// are dropped; an item eligible nowhere yields an empty table.
pub fn extend_utility_table(
    table: &UtilityTable,
    item: ItemId,
    side: Side,
    index: &DbIndex,
) -> UtilityTable {
    let rule = &table.rule;
    let eligible = match side {
        Side::Left => item > rule.max_antecedent(),
        Side::Right => item > rule.max_consequent(),
    };
    let expanded = match side {
        Side::Left if eligible => rule.push_left(item),
        Side::Right if eligible => rule.push_right(item),
        // Not reachable under the expansion order; report an empty table
        // for the set-union rule so callers still get a well-formed value.
        Side::Left => rule.expand_left(item).unwrap_or_else(|_| rule.clone()),
        Side::Right => rule.expand_right(item).unwrap_or_else(|_| rule.clone()),
    };
    let rows = if eligible {
        table
            .rows
            .iter()
            .filter_map(|row| extend_row(row, rule, item, side, index))
            .collect()
    } else {
        Vec::new()
    };
    UtilityTable {
        rule: expanded,
        rows,
    }
}
