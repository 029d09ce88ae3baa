//! Pattern-growth search over left/right rule expansions.
//!
//! Every rule `{x1<..<xk} => {y1<..<ym}` has exactly one path from the 1*1
//! rule `x1 => y1`: right expansions add `y2..ym` in order, then left
//! expansions add `x2..xk` in order. Right expansions are not allowed after a
//! left expansion, and expansion items must exceed the current maximum of the
//! side they join.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use super::params::{Bounds, MiningParams, Strategies};
use super::rcm::RuleCountMatrix;
use super::table::{extend_row, row_from_index, DbIndex, Side, UtilityTable};
use super::telemetry::{peak_memory_bytes, Telemetry};
use super::RhusrSet;
use crate::error::{Error, Result};
use crate::rules::{RuleMeasures, SequentialRule};
use crate::seqdb::{
    compute_item_stats, project_database, ItemId, ItemStats, SequenceDatabase, SidSet, Utility,
};

/// A 1*1 rule observed in the database.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialRule {
    pub rule: SequentialRule,
    /// Σ SU(s) over sequences containing the rule.
    pub seu: Utility,
    pub support_count: usize,
    pub sids: SidSet,
}

/// Items allowed into rule construction. With strategy 1 disabled every item
/// survives.
pub fn prune_items_by_seu(
    stats: &BTreeMap<ItemId, ItemStats>,
    params: &MiningParams,
    db_size: usize,
) -> Result<BTreeSet<ItemId>> {
    let bounds = params.normalize(db_size)?;
    Ok(stats
        .values()
        .filter(|s| {
            !params.strategies.enabled(1)
                || (s.seu >= bounds.minutil && bounds.frequent_enough(s.support_count))
        })
        .map(|s| s.item)
        .collect())
}

/// Every 1*1 rule occurring in at least one sequence, in rule order.
pub fn enumerate_pair_rules(index: &DbIndex) -> Vec<InitialRule> {
    let n = index.len();
    let mut acc: HashMap<(ItemId, ItemId), (Utility, Vec<usize>)> = HashMap::new();
    for sid in 0..n {
        let su = index.sequence_utility(sid);
        let entries = index.entries(sid);
        for a in entries {
            for b in entries {
                if a.pos < b.pos {
                    let slot = acc.entry((a.item, b.item)).or_default();
                    slot.0 += su;
                    slot.1.push(sid);
                }
            }
        }
    }
    let mut rules: Vec<InitialRule> = acc
        .into_iter()
        .map(|((i, j), (seu, sids))| InitialRule {
            rule: SequentialRule::pair(i, j).expect("distinct items"),
            seu,
            support_count: sids.len(),
            sids: SidSet::from_sids(n, sids),
        })
        .collect();
    rules.sort_by(|a, b| a.rule.cmp(&b.rule));
    rules
}

pub fn build_rcm(initial: &[InitialRule], alphabet_size: usize) -> RuleCountMatrix {
    let mut rcm = RuleCountMatrix::new(alphabet_size);
    for r in initial {
        rcm.set(
            r.rule.max_antecedent(),
            r.rule.max_consequent(),
            r.support_count,
        );
    }
    rcm
}

/// Filters 1*1 rules by SEU (strategy 2) and minsup (strategy 3) and pairs
/// each survivor with its utility table. `db` should already be projected.
pub fn generate_initial_rules(
    db: &SequenceDatabase,
    params: &MiningParams,
) -> Result<Vec<(InitialRule, UtilityTable)>> {
    let bounds = params.normalize(db.len())?;
    let index = DbIndex::new(db);
    let mut telemetry = Telemetry::default();
    Ok(filter_initial(
        enumerate_pair_rules(&index),
        &bounds,
        params.strategies,
        &index,
        &mut telemetry,
    ))
}

fn filter_initial(
    pairs: Vec<InitialRule>,
    bounds: &Bounds,
    strategies: Strategies,
    index: &DbIndex,
    telemetry: &mut Telemetry,
) -> Vec<(InitialRule, UtilityTable)> {
    let mut out = Vec::new();
    for r in pairs {
        telemetry.candidates_generated += 1;
        if strategies.enabled(2) && r.seu < bounds.minutil {
            telemetry.pruned(2);
            continue;
        }
        if strategies.enabled(3) && !bounds.frequent_enough(r.support_count) {
            telemetry.pruned(3);
            continue;
        }
        let rows = r
            .sids
            .iter()
            .map(|sid| row_from_index(&r.rule, index, sid).expect("rule occurs in its sids"))
            .collect();
        telemetry.tables_built += 1;
        let table = UtilityTable {
            rule: r.rule.clone(),
            rows,
        };
        out.push((r, table));
    }
    out
}

type Observer<'o> = &'o mut (dyn FnMut(&UtilityTable) + Send);

struct Search<'a, 'o> {
    index: &'a DbIndex,
    item_sids: &'a [SidSet],
    rcm: &'a RuleCountMatrix,
    bounds: &'a Bounds,
    strategies: Strategies,
    found: Vec<(SequentialRule, RuleMeasures)>,
    telemetry: Telemetry,
    observer: Option<Observer<'o>>,
}

impl<'a, 'o> Search<'a, 'o> {
    fn new(
        ctx: &'a Shared,
        bounds: &'a Bounds,
        strategies: Strategies,
        observer: Option<Observer<'o>>,
    ) -> Self {
        Self {
            index: &ctx.index,
            item_sids: &ctx.item_sids,
            rcm: &ctx.rcm,
            bounds,
            strategies,
            found: Vec::new(),
            telemetry: Telemetry::default(),
            observer,
        }
    }

    fn record_if_qualified(&mut self, table: &UtilityTable, antecedent_sids: &SidSet) {
        let b = self.bounds;
        let support_count = table.support_count();
        if !(b.frequent_enough(support_count) && b.rare(support_count)) {
            return;
        }
        let utility = table.utility();
        if utility < b.minutil {
            return;
        }
        let antecedent_count = antecedent_sids.count();
        if !b.confident(support_count, antecedent_count) {
            return;
        }
        let n = self.index.len();
        let measures = RuleMeasures {
            support_count,
            antecedent_count,
            db_size: n,
            utility,
            sids: table.sids(n),
        };
        self.found.push((table.rule.clone(), measures));
    }

    fn visit(&mut self, table: UtilityTable, antecedent_sids: &SidSet, allow_right: bool) {
        if let Some(obs) = self.observer.as_mut() {
            obs(&table);
        }
        self.record_if_qualified(&table, antecedent_sids);
        let minutil = self.bounds.minutil;
        if allow_right {
            if self.strategies.enabled(6) && table.bound_all() < minutil {
                self.telemetry.pruned(6);
            } else {
                self.expand(&table, antecedent_sids, Side::Right);
            }
        }
        if self.strategies.enabled(7) && table.bound_left() < minutil {
            self.telemetry.pruned(7);
        } else {
            self.expand(&table, antecedent_sids, Side::Left);
        }
    }

    /// Candidate items for one side, each with the rows it can extend.
    fn candidates(&self, table: &UtilityTable, side: Side) -> BTreeMap<ItemId, Vec<usize>> {
        let rule = &table.rule;
        let mut out: BTreeMap<ItemId, Vec<usize>> = BTreeMap::new();
        for (k, row) in table.rows.iter().enumerate() {
            let entries = match side {
                Side::Left => self.index.entries_above(row.sid, rule.max_antecedent()),
                Side::Right => self.index.entries_above(row.sid, rule.max_consequent()),
            };
            for e in entries {
                let eligible = match side {
                    Side::Left => e.pos < row.min_consequent_pos,
                    Side::Right => e.pos > row.max_antecedent_pos,
                };
                if eligible {
                    out.entry(e.item).or_default().push(k);
                }
            }
        }
        out
    }

    fn vetoed(&self, rule: &SequentialRule, item: ItemId, side: Side) -> bool {
        let min = self.bounds.min_count as usize;
        match side {
            Side::Left => {
                self.strategies.enabled(4)
                    && rule
                        .consequent()
                        .iter()
                        .any(|&j| self.rcm.get(item, j) < min)
            }
            Side::Right => {
                self.strategies.enabled(5)
                    && rule
                        .antecedent()
                        .iter()
                        .any(|&j| self.rcm.get(j, item) < min)
            }
        }
    }

    fn expand(&mut self, table: &UtilityTable, antecedent_sids: &SidSet, side: Side) {
        for (item, row_ids) in self.candidates(table, side) {
            if self.vetoed(&table.rule, item, side) {
                self.telemetry
                    .pruned(if side == Side::Left { 4 } else { 5 });
                continue;
            }
            self.telemetry.candidates_generated += 1;
            if self.strategies.enabled(3) && !self.bounds.frequent_enough(row_ids.len()) {
                self.telemetry.pruned(3);
                continue;
            }
            let rows = row_ids
                .iter()
                .map(|&k| {
                    extend_row(&table.rows[k], &table.rule, item, side, self.index)
                        .expect("candidate rows admit the expansion")
                })
                .collect();
            let (rule, allow_right, sids) = match side {
                Side::Left => (
                    table.rule.push_left(item),
                    false,
                    antecedent_sids.intersection(&self.item_sids[item.index()]),
                ),
                Side::Right => (table.rule.push_right(item), true, antecedent_sids.clone()),
            };
            self.telemetry.tables_built += 1;
            self.visit(UtilityTable { rule, rows }, &sids, allow_right);
        }
    }
}

/// Immutable inputs shared by every subtree.
struct Shared {
    index: DbIndex,
    item_sids: Vec<SidSet>,
    rcm: RuleCountMatrix,
}

/// Mines the complete set of rare high-utility sequential rules.
pub fn mine(db: &SequenceDatabase, params: &MiningParams) -> Result<RhusrSet> {
    mine_with_telemetry(db, params).map(|(set, _)| set)
}

pub fn mine_with_telemetry(
    db: &SequenceDatabase,
    params: &MiningParams,
) -> Result<(RhusrSet, Telemetry)> {
    run(db, params, None)
}

/// Single-threaded run that hands every utility table it builds to
/// `observer`, in construction order.
pub fn mine_observed(
    db: &SequenceDatabase,
    params: &MiningParams,
    observer: &mut (dyn FnMut(&UtilityTable) + Send),
) -> Result<(RhusrSet, Telemetry)> {
    run(db, params, Some(observer))
}

fn run(
    db: &SequenceDatabase,
    params: &MiningParams,
    observer: Option<Observer<'_>>,
) -> Result<(RhusrSet, Telemetry)> {
    let start = Instant::now();
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let n = db.len();
    let bounds = params.normalize(n)?;
    let strategies = params.strategies;
    let mut telemetry = Telemetry::default();

    let stats = compute_item_stats(db);
    let keep = prune_items_by_seu(&stats, params, n)?;
    telemetry.pruned_by_strategy[0] = (stats.len() - keep.len()) as u64;
    let projected;
    let db_star = if keep.len() == stats.len() {
        db
    } else {
        projected = project_database(db, &keep);
        &projected
    };

    let alphabet_size = db.profits().len();
    let mut item_sids = vec![SidSet::new(n); alphabet_size];
    for s in stats.values().filter(|s| keep.contains(&s.item)) {
        item_sids[s.item.index()] = s.sids.clone();
    }

    let index = DbIndex::new(db_star);
    let pairs = enumerate_pair_rules(&index);
    let rcm = build_rcm(&pairs, alphabet_size);
    let roots = filter_initial(pairs, &bounds, strategies, &index, &mut telemetry);
    let shared = Shared {
        index,
        item_sids,
        rcm,
    };

    let explore = |search: &mut Search<'_, '_>, (initial, table): &(InitialRule, UtilityTable)| {
        let x = initial.rule.max_antecedent();
        let sids = search.item_sids[x.index()].clone();
        search.visit(table.clone(), &sids, true);
    };

    let mut found = Vec::new();
    if observer.is_some() || params.threads == 1 {
        let mut search = Search::new(&shared, &bounds, strategies, observer);
        for root in &roots {
            explore(&mut search, root);
        }
        telemetry.merge(&search.telemetry);
        found = search.found;
    } else {
        let work = || {
            roots
                .par_iter()
                .map(|root| {
                    let mut search = Search::new(&shared, &bounds, strategies, None);
                    explore(&mut search, root);
                    (search.found, search.telemetry)
                })
                .collect::<Vec<_>>()
        };
        let parts = if params.threads == 0 {
            work()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(params.threads)
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
                .install(work)
        };
        for (part, t) in parts {
            telemetry.merge(&t);
            found.extend(part);
        }
    }

    let set = RhusrSet::from_unsorted(found);
    telemetry.rules_found = set.len() as u64;
    telemetry.runtime_ms = start.elapsed().as_millis() as u64;
    telemetry.peak_mem_bytes = peak_memory_bytes();
    Ok((set, telemetry))
}
