//! Sequential rule semantics: occurrence, measures and the per-sequence item
//! sets that can extend a rule. Both the miner and the oracle are checked
//! against this layer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::seqdb::{
    item_utility, ItemId, ItemStats, ProfitTable, QSequence, SequenceDatabase, SidSet, Utility,
};

/// `X => Y` with X, Y non-empty, disjoint, and kept sorted by item id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SequentialRule {
    antecedent: Vec<ItemId>,
    consequent: Vec<ItemId>,
}

impl SequentialRule {
    pub fn new(
        antecedent: impl IntoIterator<Item = ItemId>,
        consequent: impl IntoIterator<Item = ItemId>,
    ) -> Result<Self> {
        let x: BTreeSet<ItemId> = antecedent.into_iter().collect();
        let y: BTreeSet<ItemId> = consequent.into_iter().collect();
        if x.is_empty() || y.is_empty() {
            return Err(Error::InvalidRule(
                "antecedent and consequent must be non-empty".into(),
            ));
        }
        if let Some(i) = x.intersection(&y).next() {
            return Err(Error::InvalidRule(format!(
                "item {i} appears on both sides"
            )));
        }
        Ok(Self {
            antecedent: x.into_iter().collect(),
            consequent: y.into_iter().collect(),
        })
    }

    /// 1*1 rule `i => j`.
    pub fn pair(i: ItemId, j: ItemId) -> Result<Self> {
        Self::new([i], [j])
    }

    /// Builds a rule from item names.
    pub fn from_names(
        profits: &ProfitTable,
        antecedent: &[&str],
        consequent: &[&str],
    ) -> Result<Self> {
        let lookup = |n: &&str| {
            profits
                .id(n)
                .ok_or_else(|| Error::UnknownItem(n.to_string()))
        };
        Self::new(
            antecedent.iter().map(lookup).collect::<Result<Vec<_>>>()?,
            consequent.iter().map(lookup).collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn antecedent(&self) -> &[ItemId] {
        &self.antecedent
    }

    pub fn consequent(&self) -> &[ItemId] {
        &self.consequent
    }

    pub fn max_antecedent(&self) -> ItemId {
        *self.antecedent.last().expect("non-empty")
    }

    pub fn max_consequent(&self) -> ItemId {
        *self.consequent.last().expect("non-empty")
    }

    /// Size `k * m` as `(|X|, |Y|)`.
    pub fn size(&self) -> (usize, usize) {
        (self.antecedent.len(), self.consequent.len())
    }

    pub fn items(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.antecedent.iter().chain(&self.consequent).copied()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.antecedent.binary_search(&item).is_ok() || self.consequent.binary_search(&item).is_ok()
    }

    /// `X ∪ {i} => Y`. Keeps the antecedent sorted for any `i`.
    pub fn expand_left(&self, item: ItemId) -> Result<Self> {
        Self::new(
            self.antecedent.iter().copied().chain([item]),
            self.consequent.iter().copied(),
        )
    }

    /// `X => Y ∪ {i}`.
    pub fn expand_right(&self, item: ItemId) -> Result<Self> {
        Self::new(
            self.antecedent.iter().copied(),
            self.consequent.iter().copied().chain([item]),
        )
    }

    /// Append-only expansion for items greater than the current maximum.
    pub(crate) fn push_left(&self, item: ItemId) -> Self {
        debug_assert!(item > self.max_antecedent() && !self.contains(item));
        let mut antecedent = self.antecedent.clone();
        antecedent.push(item);
        Self {
            antecedent,
            consequent: self.consequent.clone(),
        }
    }

    pub(crate) fn push_right(&self, item: ItemId) -> Self {
        debug_assert!(item > self.max_consequent() && !self.contains(item));
        let mut consequent = self.consequent.clone();
        consequent.push(item);
        Self {
            antecedent: self.antecedent.clone(),
            consequent,
        }
    }

    /// Renders as `{a,b,c} => {g}` using item names.
    pub fn display<'a>(&'a self, profits: &'a ProfitTable) -> RuleDisplay<'a> {
        RuleDisplay {
            rule: self,
            profits,
        }
    }
}

pub struct RuleDisplay<'a> {
    rule: &'a SequentialRule,
    profits: &'a ProfitTable,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |items: &[ItemId]| {
            items
                .iter()
                .map(|&i| self.profits.name(i))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{{{}}} => {{{}}}",
            side(&self.rule.antecedent),
            side(&self.rule.consequent)
        )
    }
}

/// Witness of `X => Y` occurring in a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// Largest itemset index holding an antecedent item.
    pub max_antecedent_pos: usize,
    /// Smallest itemset index holding a consequent item.
    pub min_consequent_pos: usize,
}

impl Occurrence {
    /// The smallest cut `p` (1-based itemset count of the prefix).
    pub fn cut(&self) -> usize {
        self.max_antecedent_pos + 1
    }
}

/// Items are unique per sequence, so the rule occurs iff every item is present
/// and the last antecedent itemset precedes the first consequent itemset.
pub fn occurs_in(rule: &SequentialRule, seq: &QSequence) -> Option<Occurrence> {
    let mut max_x = 0;
    for &i in rule.antecedent() {
        let (pos, _) = seq.find(i)?;
        max_x = max_x.max(pos);
    }
    let mut min_y = usize::MAX;
    for &i in rule.consequent() {
        let (pos, _) = seq.find(i)?;
        min_y = min_y.min(pos);
    }
    (max_x < min_y).then_some(Occurrence {
        max_antecedent_pos: max_x,
        min_consequent_pos: min_y,
    })
}

/// u(r, s) = u(X ∪ Y, s).
pub fn rule_utility_in_seq(
    rule: &SequentialRule,
    seq: &QSequence,
    profits: &ProfitTable,
) -> Result<Utility> {
    if occurs_in(rule, seq).is_none() {
        return Err(Error::RuleNotInSequence { sid: seq.sid() });
    }
    rule.items().map(|i| item_utility(i, seq, profits)).sum()
}

/// Intersection of the per-item sid bit vectors.
pub fn sids_of_itemset(items: &[ItemId], stats: &BTreeMap<ItemId, ItemStats>) -> Result<SidSet> {
    let mut iter = items.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidRule("empty itemset".into()))?;
    let lookup = |i: &ItemId| stats.get(i).ok_or(Error::UnknownItemId(i.0));
    let mut sids = lookup(first)?.sids.clone();
    for i in iter {
        sids.intersect_with(&lookup(i)?.sids);
    }
    Ok(sids)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleMeasures {
    pub support_count: usize,
    /// |sids(X)|, the confidence denominator.
    pub antecedent_count: usize,
    /// |SD|.
    pub db_size: usize,
    pub utility: Utility,
    pub sids: SidSet,
}

impl RuleMeasures {
    /// |sids(r)| / |SD|.
    pub fn support(&self) -> Ratio<u64> {
        Ratio::new(self.support_count as u64, self.db_size.max(1) as u64)
    }

    /// |sids(r)| / |sids(X)|, reported as 0 when X never occurs.
    pub fn confidence(&self) -> Ratio<u64> {
        if self.antecedent_count == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.support_count as u64, self.antecedent_count as u64)
        }
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact measures by scanning every sequence.
pub fn measures(
    rule: &SequentialRule,
    db: &SequenceDatabase,
    stats: &BTreeMap<ItemId, ItemStats>,
) -> RuleMeasures {
    let mut sids = SidSet::new(db.len());
    let mut utility = 0;
    for seq in db.sequences() {
        if occurs_in(rule, seq).is_some() {
            sids.insert(seq.sid());
            utility += rule
                .items()
                .map(|i| item_utility(i, seq, db.profits()).expect("occurring item"))
                .sum::<Utility>();
        }
    }
    let antecedent_count = sids_of_itemset(rule.antecedent(), stats)
        .map(|s| s.count())
        .unwrap_or(0);
    RuleMeasures {
        support_count: sids.count(),
        antecedent_count,
        db_size: db.len(),
        utility,
        sids,
    }
}

/// Items that can extend a rule in one sequence, split by side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionSets {
    pub only_left: BTreeSet<ItemId>,
    pub only_right: BTreeSet<ItemId>,
    pub left_right: BTreeSet<ItemId>,
}

impl ExpansionSets {
    pub fn left_candidates(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.only_left.iter().chain(&self.left_right).copied()
    }

    pub fn right_candidates(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.only_right.iter().chain(&self.left_right).copied()
    }
}

/// Left-eligible items sit before the first consequent itemset and are
/// greater than every antecedent item; right-eligible items sit after the
/// last antecedent itemset and are greater than every consequent item.
pub fn expansion_sets(rule: &SequentialRule, seq: &QSequence) -> Result<ExpansionSets> {
    let occ = occurs_in(rule, seq).ok_or(Error::RuleNotInSequence { sid: seq.sid() })?;
    let max_x = rule.max_antecedent();
    let max_y = rule.max_consequent();
    let mut sets = ExpansionSets::default();
    for (pos, q) in seq.items() {
        let i = q.item;
        if rule.contains(i) {
            continue;
        }
        let left = pos < occ.min_consequent_pos && i > max_x;
        let right = pos > occ.max_antecedent_pos && i > max_y;
        match (left, right) {
            (true, true) => sets.left_right.insert(i),
            (true, false) => sets.only_left.insert(i),
            (false, true) => sets.only_right.insert(i),
            (false, false) => false,
        };
    }
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::seqdb::{compute_item_stats, ProfitTable, QItem, SequenceDatabase};
    use proptest::prelude::*;

    fn rule(db: &SequenceDatabase, x: &[&str], y: &[&str]) -> SequentialRule {
        SequentialRule::from_names(db.profits(), x, y).unwrap()
    }

    fn names(db: &SequenceDatabase, set: &BTreeSet<ItemId>) -> Vec<String> {
        set.iter()
            .map(|&i| db.profits().name(i).to_string())
            .collect()
    }

    #[test]
    fn construction_rejects_overlap_and_empty_sides() {
        let a = ItemId(0);
        assert!(SequentialRule::new([a], [a]).is_err());
        assert!(SequentialRule::new([], [a]).is_err());
        assert!(SequentialRule::new([a], []).is_err());
    }

    #[test]
    fn occurrence_on_running_example() {
        let db = fixtures::running_example();
        let r = rule(&db, &["a", "b"], &["e", "g"]);
        let hits: Vec<_> = db
            .sequences()
            .iter()
            .filter(|s| occurs_in(&r, s).is_some())
            .map(|s| s.sid())
            .collect();
        assert_eq!(hits, vec![0, 1]);

        let ab = rule(&db, &["a"], &["b"]);
        let hits: Vec<_> = db
            .sequences()
            .iter()
            .filter(|s| occurs_in(&ab, s).is_some())
            .map(|s| s.sid())
            .collect();
        assert_eq!(hits, vec![1, 2]);
        assert!(occurs_in(&ab, &db.sequences()[0]).is_none());
    }

    #[test]
    fn utilities() {
        let db = fixtures::running_example();
        let ab = rule(&db, &["a"], &["b"]);
        assert_eq!(
            rule_utility_in_seq(&ab, &db.sequences()[1], db.profits()).unwrap(),
            5
        );
        assert!(rule_utility_in_seq(&ab, &db.sequences()[0], db.profits()).is_err());
        let stats = compute_item_stats(&db);
        assert_eq!(measures(&ab, &db, &stats).utility, 10);
        // S_1: 1+10+2, S_2: 1+20+2, S_4: 3+5+3
        let acg = rule(&db, &["a", "c"], &["g"]);
        assert_eq!(measures(&acg, &db, &stats).utility, 47);
        let reconciled = fixtures::running_example_su16();
        let stats = compute_item_stats(&reconciled);
        assert_eq!(measures(&acg, &reconciled, &stats).utility, 45);
    }

    #[test]
    fn itemset_sids() {
        let db = fixtures::running_example();
        let stats = compute_item_stats(&db);
        let id = |n| db.profits().id(n).unwrap();
        assert_eq!(
            sids_of_itemset(&[id("a"), id("e")], &stats)
                .unwrap()
                .count(),
            3
        );
        assert_eq!(sids_of_itemset(&[id("a")], &stats).unwrap().count(), 4);
        let ad = sids_of_itemset(&[id("a"), id("d")], &stats).unwrap();
        assert_eq!(ad.iter().collect::<Vec<_>>(), vec![1]);
        assert!(sids_of_itemset(&[ItemId(99)], &stats).is_err());
    }

    #[test]
    fn measures_on_running_example() {
        let db = fixtures::running_example();
        let stats = compute_item_stats(&db);
        let m = measures(&rule(&db, &["a"], &["b"]), &db, &stats);
        assert_eq!(m.support(), Ratio::new(1, 2));
        assert_eq!(m.confidence(), Ratio::new(1, 2));
        let m = measures(&rule(&db, &["a", "b", "c"], &["g"]), &db, &stats);
        assert_eq!(m.support(), Ratio::new(3, 4));
        assert_eq!(m.confidence(), Ratio::from_integer(1));
    }

    #[test]
    fn measures_for_absent_items_are_zero() {
        let mut profits = ProfitTable::new();
        profits.insert("a", 1).unwrap();
        profits.insert("b", 1).unwrap();
        profits.insert("z", 1).unwrap();
        let db = SequenceDatabase::new(
            vec![vec![
                vec![QItem::new(ItemId(0), 1)],
                vec![QItem::new(ItemId(1), 1)],
            ]],
            profits,
        )
        .unwrap();
        let stats = compute_item_stats(&db);
        let m = measures(
            &SequentialRule::pair(ItemId(2), ItemId(0)).unwrap(),
            &db,
            &stats,
        );
        assert_eq!(m.support_count, 0);
        assert_eq!(m.confidence(), Ratio::from_integer(0));
    }

    #[test]
    fn expansion_sets_for_a_implies_e() {
        let db = fixtures::running_example();
        let r = rule(&db, &["a"], &["e"]);
        let s1 = expansion_sets(&r, &db.sequences()[0]).unwrap();
        assert_eq!(names(&db, &s1.only_left), vec!["b", "c"]);
        assert!(s1.only_right.is_empty());
        assert_eq!(names(&db, &s1.left_right), vec!["f", "g"]);

        let s2 = expansion_sets(&r, &db.sequences()[1]).unwrap();
        assert_eq!(names(&db, &s2.only_left), vec!["b", "c", "d"]);
        assert_eq!(names(&db, &s2.only_right), vec!["g"]);
        assert!(s2.left_right.is_empty());

        assert!(expansion_sets(&r, &db.sequences()[3]).is_err());
    }

    #[test]
    fn expansion_sets_empty_when_rule_covers_sequence() {
        let db = fixtures::running_example();
        let r = rule(&db, &["a", "b", "f"], &["e"]);
        assert_eq!(
            expansion_sets(&r, &db.sequences()[2]).unwrap(),
            ExpansionSets::default()
        );
    }

    #[test]
    fn rendering() {
        let db = fixtures::running_example();
        let r = rule(&db, &["c", "a", "b"], &["g"]);
        assert_eq!(r.display(db.profits()).to_string(), "{a,b,c} => {g}");
    }

    /// Direct reading of the occurrence definition: some cut p with
    /// 1 <= p < m puts X entirely in the prefix and Y entirely in the suffix.
    fn occurs_by_cut_search(rule: &SequentialRule, seq: &QSequence) -> Option<usize> {
        let m = seq.itemsets().len();
        (1..m).find(|&p| {
            let in_range = |i: ItemId, lo: usize, hi: usize| {
                seq.itemsets()[lo..hi]
                    .iter()
                    .any(|set| set.items().iter().any(|q| q.item == i))
            };
            rule.antecedent().iter().all(|&i| in_range(i, 0, p))
                && rule.consequent().iter().all(|&i| in_range(i, p, m))
        })
    }

    fn arb_sequence() -> impl Strategy<Value = SequenceDatabase> {
        prop::collection::vec(prop::collection::vec(0u32..7, 1..3), 1..6).prop_map(|sets| {
            let mut used = std::collections::HashSet::new();
            let raw: Vec<Vec<QItem>> = sets
                .into_iter()
                .map(|s| {
                    s.into_iter()
                        .filter(|&i| used.insert(i))
                        .map(|i| QItem::new(ItemId(i), 1 + i % 3))
                        .collect::<Vec<_>>()
                })
                .filter(|s| !s.is_empty())
                .collect();
            SequenceDatabase::new(
                vec![raw],
                ProfitTable::from_profits(&[1, 2, 3, 4, 5, 6, 7]).unwrap(),
            )
            .unwrap()
        })
    }

    fn arb_rule() -> impl Strategy<Value = SequentialRule> {
        prop::collection::vec(0u8..3, 7).prop_filter_map("both sides non-empty", |sides| {
            let x: Vec<_> = (0..7)
                .filter(|&k| sides[k] == 1)
                .map(|k| ItemId(k as u32))
                .collect();
            let y: Vec<_> = (0..7)
                .filter(|&k| sides[k] == 2)
                .map(|k| ItemId(k as u32))
                .collect();
            SequentialRule::new(x, y).ok()
        })
    }

    proptest! {
        #[test]
        fn index_occurrence_equals_cut_search(db in arb_sequence(), r in arb_rule()) {
            let seq = &db.sequences()[0];
            let fast = occurs_in(&r, seq).map(|o| o.cut());
            prop_assert_eq!(fast, occurs_by_cut_search(&r, seq));
        }

        #[test]
        fn expansion_sets_match_expanded_occurrence(db in arb_sequence(), r in arb_rule()) {
            let seq = &db.sequences()[0];
            if let Ok(sets) = expansion_sets(&r, seq) {
                let left: BTreeSet<_> = sets.left_candidates().collect();
                let right: BTreeSet<_> = sets.right_candidates().collect();
                prop_assert!(sets.only_left.is_disjoint(&sets.only_right));
                prop_assert!(sets.only_left.is_disjoint(&sets.left_right));
                prop_assert!(sets.only_right.is_disjoint(&sets.left_right));
                for (_, q) in seq.items() {
                    let i = q.item;
                    if r.contains(i) {
                        prop_assert!(!left.contains(&i) && !right.contains(&i));
                        continue;
                    }
                    let l = i > r.max_antecedent()
                        && occurs_in(&r.expand_left(i).unwrap(), seq).is_some();
                    let rr = i > r.max_consequent()
                        && occurs_in(&r.expand_right(i).unwrap(), seq).is_some();
                    prop_assert_eq!(left.contains(&i), l);
                    prop_assert_eq!(right.contains(&i), rr);
                }
            }
        }

        #[test]
        fn confidence_never_exceeds_one(db in arb_sequence(), r in arb_rule()) {
            let stats = compute_item_stats(&db);
            let m = measures(&r, &db, &stats);
            prop_assert!(m.support_count <= m.antecedent_count || m.antecedent_count == 0 && m.support_count == 0);
            prop_assert!(m.confidence() <= Ratio::from_integer(1));
        }
    }
}
