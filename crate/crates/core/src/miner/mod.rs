//! Rare high-utility sequential rule mining.
//!
//! The search starts from 1*1 rules and grows them with left and right
//! expansions driven by utility tables. Seven pruning strategies (see
//! [`Strategies`]) cut the search without changing its result.

mod params;
mod rcm;
mod search;
mod table;
mod telemetry;

pub use params::{parse_fraction, Bounds, MiningParams, Strategies, Threshold};
pub use rcm::RuleCountMatrix;
pub use search::{
    build_rcm, enumerate_pair_rules, generate_initial_rules, mine, mine_observed,
    mine_with_telemetry, prune_items_by_seu, InitialRule,
};
pub use table::{build_utility_table, extend_utility_table, DbIndex, Side, UtRow, UtilityTable};
pub use telemetry::{peak_memory_bytes, Telemetry};

use crate::rules::{RuleMeasures, SequentialRule};

/// Mined rules with their measures, sorted by antecedent then consequent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RhusrSet {
    rules: Vec<(SequentialRule, RuleMeasures)>,
}

impl RhusrSet {
    /// Sorts into canonical order and drops duplicate rules.
    pub fn from_unsorted(mut rules: Vec<(SequentialRule, RuleMeasures)>) -> Self {
        rules.sort_by(|a, b| a.0.cmp(&b.0));
        rules.dedup_by(|a, b| a.0 == b.0);
        Self { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(SequentialRule, RuleMeasures)> + '_ {
        self.rules.iter()
    }

    pub fn rules(&self) -> impl Iterator<Item = &SequentialRule> + '_ {
        self.rules.iter().map(|(r, _)| r)
    }

    pub fn get(&self, rule: &SequentialRule) -> Option<&RuleMeasures> {
        self.rules
            .binary_search_by(|(r, _)| r.cmp(rule))
            .ok()
            .map(|k| &self.rules[k].1)
    }

    pub fn as_slice(&self) -> &[(SequentialRule, RuleMeasures)] {
        &self.rules
    }
}

impl<'a> IntoIterator for &'a RhusrSet {
    type Item = &'a (SequentialRule, RuleMeasures);
    type IntoIter = std::slice::Iter<'a, (SequentialRule, RuleMeasures)>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}
