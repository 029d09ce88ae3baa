//! Quantity-annotated sequence databases.
//!
//! A database is a list of sequences of itemsets, each item carrying a
//! purchase quantity (internal utility), plus a global profit table (external
//! utility). Item names are interned to dense [`ItemId`]s in the order they
//! first appear in the profit table, and that id order is the item order used
//! by every rule and expansion.

mod parse;
mod sidset;

pub use parse::{load_database, parse_database, parse_database_str, write_database, write_profits};
pub use sidset::SidSet;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Money units. All utility arithmetic is exact integer arithmetic; the total
/// utility of a database is checked to fit at construction, so every partial
/// sum computed later fits as well.
pub type Utility = u64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ItemId(pub u32);

impl ItemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// External utility p(i) per item, plus the name interner.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProfitTable {
    names: Vec<String>,
    profits: Vec<Utility>,
    index: HashMap<String, ItemId>,
}

impl ProfitTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table whose items are named by their id (`"0"`, `"1"`, ...).
    pub fn from_profits(profits: &[Utility]) -> Result<Self> {
        let mut table = Self::new();
        for (i, &p) in profits.iter().enumerate() {
            table.insert(&i.to_string(), p)?;
        }
        Ok(table)
    }

    /// Interns `name` with the next dense id.
    pub fn insert(&mut self, name: &str, profit: Utility) -> Result<ItemId> {
        if profit == 0 {
            return Err(Error::InvalidDatabase(format!(
                "profit of `{name}` must be positive"
            )));
        }
        if self.index.contains_key(name) {
            return Err(Error::InvalidDatabase(format!(
                "duplicate profit entry for `{name}`"
            )));
        }
        let id = ItemId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.profits.push(profit);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<ItemId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, item: ItemId) -> &str {
        self.names
            .get(item.index())
            .map(String::as_str)
            .unwrap_or("?")
    }

    pub fn profit(&self, item: ItemId) -> Option<Utility> {
        self.profits.get(item.index()).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// `(id, name, profit)` in id order.
    pub fn iter(&self) -> impl Iterator<Item = (ItemId, &str, Utility)> + '_ {
        self.names
            .iter()
            .zip(&self.profits)
            .enumerate()
            .map(|(i, (n, &p))| (ItemId(i as u32), n.as_str(), p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QItem {
    pub item: ItemId,
    pub quantity: u32,
}

impl QItem {
    pub fn new(item: ItemId, quantity: u32) -> Self {
        Self { item, quantity }
    }
}

/// Items sorted strictly ascending by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QItemset {
    items: Vec<QItem>,
}

impl QItemset {
    pub fn items(&self) -> &[QItem] {
        &self.items
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSequence {
    sid: usize,
    itemsets: Vec<QItemset>,
}

impl QSequence {
    pub fn sid(&self) -> usize {
        self.sid
    }

    pub fn itemsets(&self) -> &[QItemset] {
        &self.itemsets
    }

    /// True only for sequences emptied by projection.
    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    /// `(itemset index, item)` in sequence order.
    pub fn items(&self) -> impl Iterator<Item = (usize, QItem)> + '_ {
        self.itemsets
            .iter()
            .enumerate()
            .flat_map(|(pos, set)| set.items.iter().map(move |q| (pos, *q)))
    }

    /// Itemset index and quantity of `item`, if present.
    pub fn find(&self, item: ItemId) -> Option<(usize, u32)> {
        self.items()
            .find(|(_, q)| q.item == item)
            .map(|(pos, q)| (pos, q.quantity))
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.find(item).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDatabase {
    sequences: Vec<QSequence>,
    profits: ProfitTable,
}

impl SequenceDatabase {
    /// Validates and assembles a database. Sids are assigned in input order;
    /// items inside each itemset are sorted by id.
    pub fn new(raw: Vec<Vec<Vec<QItem>>>, profits: ProfitTable) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        let mut sequences = Vec::with_capacity(raw.len());
        let mut total: Utility = 0;
        for (sid, itemsets) in raw.into_iter().enumerate() {
            if itemsets.is_empty() {
                return Err(Error::InvalidDatabase(format!("sequence {sid} is empty")));
            }
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::with_capacity(itemsets.len());
            for mut items in itemsets {
                if items.is_empty() {
                    return Err(Error::InvalidDatabase(format!(
                        "sequence {sid} contains an empty itemset"
                    )));
                }
                items.sort_by_key(|q| q.item);
                for q in &items {
                    let profit = profits
                        .profit(q.item)
                        .ok_or(Error::UnknownItemId(q.item.0))?;
                    if q.quantity == 0 {
                        return Err(Error::InvalidDatabase(format!(
                            "item `{}` in sequence {sid} has zero quantity",
                            profits.name(q.item)
                        )));
                    }
                    if !seen.insert(q.item) {
                        return Err(Error::DuplicateItem {
                            sid,
                            item: profits.name(q.item).to_string(),
                        });
                    }
                    let u = profit
                        .checked_mul(u64::from(q.quantity))
                        .ok_or(Error::UtilityOverflow)?;
                    total = total.checked_add(u).ok_or(Error::UtilityOverflow)?;
                }
                out.push(QItemset { items });
            }
            sequences.push(QSequence { sid, itemsets: out });
        }
        Ok(Self { sequences, profits })
    }

    pub fn sequences(&self) -> &[QSequence] {
        &self.sequences
    }

    pub fn sequence(&self, sid: usize) -> Option<&QSequence> {
        self.sequences.get(sid)
    }

    pub fn profits(&self) -> &ProfitTable {
        &self.profits
    }

    /// |SD|, including sequences emptied by projection.
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Distinct items occurring in at least one sequence, ascending.
    pub fn alphabet(&self) -> Vec<ItemId> {
        let mut present = vec![false; self.profits.len()];
        for s in &self.sequences {
            for (_, q) in s.items() {
                present[q.item.index()] = true;
            }
        }
        present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| ItemId(i as u32))
            .collect()
    }

    pub fn total_utility(&self) -> Utility {
        self.sequences
            .iter()
            .map(|s| sequence_utility(s, &self.profits))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemStats {
    pub item: ItemId,
    /// Sequence estimated utility: Σ SU(s) over sequences containing the item.
    pub seu: Utility,
    pub support_count: usize,
    pub sids: SidSet,
}

/// u(i, s) = q(i, s) × p(i).
pub fn item_utility(item: ItemId, seq: &QSequence, profits: &ProfitTable) -> Result<Utility> {
    let (_, quantity) = seq.find(item).ok_or(Error::ItemNotInSequence {
        item: item.0,
        sid: seq.sid,
    })?;
    let profit = profits.profit(item).ok_or(Error::UnknownItemId(item.0))?;
    Ok(u64::from(quantity) * profit)
}

/// SU(s): utility of every item in the sequence.
pub fn sequence_utility(seq: &QSequence, profits: &ProfitTable) -> Utility {
    seq.items()
        .map(|(_, q)| u64::from(q.quantity) * profits.profit(q.item).unwrap_or(0))
        .sum()
}

/// One database scan: SEU, support count and sid bit vector per item.
pub fn compute_item_stats(db: &SequenceDatabase) -> BTreeMap<ItemId, ItemStats> {
    let n = db.len();
    let mut stats: BTreeMap<ItemId, ItemStats> = BTreeMap::new();
    for seq in db.sequences() {
        let su = sequence_utility(seq, db.profits());
        for (_, q) in seq.items() {
            let entry = stats.entry(q.item).or_insert_with(|| ItemStats {
                item: q.item,
                seu: 0,
                support_count: 0,
                sids: SidSet::new(n),
            });
            entry.seu += su;
            entry.support_count += 1;
            entry.sids.insert(seq.sid);
        }
    }
    stats
}

/// Removes every item not in `keep`. Itemsets left empty are dropped; emptied
/// sequences stay as shells so sids and |SD| are unchanged.
pub fn project_database(
    db: &SequenceDatabase,
    keep: &std::collections::BTreeSet<ItemId>,
) -> SequenceDatabase {
    let sequences = db
        .sequences
        .iter()
        .map(|seq| QSequence {
            sid: seq.sid,
            itemsets: seq
                .itemsets
                .iter()
                .filter_map(|set| {
                    let items: Vec<QItem> = set
                        .items
                        .iter()
                        .filter(|q| keep.contains(&q.item))
                        .copied()
                        .collect();
                    (!items.is_empty()).then_some(QItemset { items })
                })
                .collect(),
        })
        .collect();
    SequenceDatabase {
        sequences,
        profits: db.profits.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn id(db: &SequenceDatabase, name: &str) -> ItemId {
        db.profits().id(name).unwrap()
    }

    #[test]
    fn item_utilities_in_s2() {
        let db = fixtures::running_example();
        let s2 = &db.sequences()[1];
        assert_eq!(item_utility(id(&db, "b"), s2, db.profits()).unwrap(), 4);
        assert_eq!(item_utility(id(&db, "a"), s2, db.profits()).unwrap(), 1);
        assert_eq!(item_utility(id(&db, "c"), s2, db.profits()).unwrap(), 20);
    }

    #[test]
    fn item_utility_absent_item_errors() {
        let db = fixtures::running_example();
        let s3 = &db.sequences()[2];
        assert!(matches!(
            item_utility(id(&db, "d"), s3, db.profits()),
            Err(Error::ItemNotInSequence { .. })
        ));
    }

    #[test]
    fn sequence_utilities_match_seu_column() {
        let db = fixtures::running_example();
        let su: Vec<_> = db
            .sequences()
            .iter()
            .map(|s| sequence_utility(s, db.profits()))
            .collect();
        // S_4 prints (g,3): 3+4+5+3+3 = 18, while the printed SEU column says 16.
        assert_eq!(su, vec![27, 40, 15, 18]);

        let reconciled = fixtures::running_example_su16();
        let su: Vec<_> = reconciled
            .sequences()
            .iter()
            .map(|s| sequence_utility(s, reconciled.profits()))
            .collect();
        assert_eq!(su, vec![27, 40, 15, 16]);
    }

    #[test]
    fn single_item_sequence_utility() {
        let db = parse_database_str("a:1 -2\n", "a 1\n").unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(sequence_utility(&db.sequences()[0], db.profits()), 1);
    }

    #[test]
    fn item_stats() {
        let db = fixtures::running_example_su16();
        let stats = compute_item_stats(&db);
        let a = &stats[&id(&db, "a")];
        assert_eq!(a.seu, 27 + 40 + 15 + 16);
        assert_eq!(a.support_count, 4);
        assert_eq!(format!("{:?}", a.sids), "SidSet(1111)");
        let e = &stats[&id(&db, "e")];
        assert_eq!(e.support_count, 3);
        assert_eq!(format!("{:?}", e.sids), "SidSet(1110)");

        // Literal fixture: SU(S_4) = 18.
        let literal = compute_item_stats(&fixtures::running_example());
        assert_eq!(literal[&id(&db, "a")].seu, 100);
    }

    #[test]
    fn projection() {
        let db = fixtures::running_example();
        let all: BTreeSet<_> = db.alphabet().into_iter().collect();
        assert_eq!(project_database(&db, &all), db);

        let only_a = project_database(&db, &BTreeSet::from([id(&db, "a")]));
        assert_eq!(only_a.len(), 4);
        for s in only_a.sequences() {
            assert_eq!(s.itemsets().len(), 1);
            assert_eq!(s.itemsets()[0].items()[0].item, id(&db, "a"));
        }

        let only_d = project_database(&db, &BTreeSet::from([id(&db, "d")]));
        assert_eq!(only_d.len(), 4);
        let non_empty: Vec<_> = only_d
            .sequences()
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.sid())
            .collect();
        assert_eq!(non_empty, vec![1]);
    }

    #[test]
    fn constructor_rejects_duplicates_and_zero_quantity() {
        let profits = ProfitTable::from_profits(&[1, 2]).unwrap();
        let dup = vec![vec![
            vec![QItem::new(ItemId(0), 1)],
            vec![QItem::new(ItemId(0), 2)],
        ]];
        assert!(matches!(
            SequenceDatabase::new(dup, profits.clone()),
            Err(Error::DuplicateItem { .. })
        ));
        let zero = vec![vec![vec![QItem::new(ItemId(1), 0)]]];
        assert!(SequenceDatabase::new(zero, profits.clone()).is_err());
        assert!(matches!(
            SequenceDatabase::new(vec![], profits),
            Err(Error::EmptyDatabase)
        ));
    }

    #[test]
    fn overflow_is_detected() {
        let profits = ProfitTable::from_profits(&[u64::MAX / 2]).unwrap();
        let raw = vec![vec![vec![QItem::new(ItemId(0), 3)]]];
        assert!(matches!(
            SequenceDatabase::new(raw, profits),
            Err(Error::UtilityOverflow)
        ));
    }
}
