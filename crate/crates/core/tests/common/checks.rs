//! Checks that report problems instead of panicking, so the acceptance
//! harness can print a verdict line for each one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhusr::miner::{
    build_utility_table, extend_utility_table, mine_observed, prune_items_by_seu, DbIndex,
    MiningParams, RhusrSet, Side, UtilityTable,
};
use rhusr::oracle::{enumerate_rules, RuleUniverse};
use rhusr::seqdb::{compute_item_stats, sequence_utility, SequenceDatabase};

pub struct BoundReport {
    pub rules: RhusrSet,
    pub tables: usize,
    pub violations: Vec<String>,
}

/// Mines with an observer on every utility table and checks, against the
/// exhaustive `universe`, that
/// - the all-sides bound dominates every rule reachable by adding larger
///   items to either side (restricted to items that survive item pruning),
/// - the left bound dominates every such rule with an unchanged consequent,
/// - left bound <= all-sides bound <= SEU.
pub fn check_bounds(
    db: &SequenceDatabase,
    params: &MiningParams,
    universe: &RuleUniverse,
) -> BoundReport {
    let stats = compute_item_stats(db);
    let kept = prune_items_by_seu(&stats, params, db.len()).unwrap();
    let mut tables = 0;
    let mut violations = Vec::new();
    let mut observe = |t: &UtilityTable| {
        tables += 1;
        let r = &t.rule;
        let name = r.display(db.profits()).to_string();
        let seu: u64 = t
            .rows
            .iter()
            .map(|row| sequence_utility(db.sequence(row.sid).unwrap(), db.profits()))
            .sum();
        if t.bound_left() > t.bound_all() || t.bound_all() > seu {
            violations.push(format!(
                "{name}: left {} all {} seu {seu}",
                t.bound_left(),
                t.bound_all()
            ));
        }
        for (other, m) in universe {
            if !other.items().all(|i| kept.contains(&i)) {
                continue;
            }
            let grows = |mine: &[rhusr::ItemId], theirs: &[rhusr::ItemId], top| {
                mine.iter().all(|i| theirs.contains(i))
                    && theirs.iter().all(|i| mine.contains(i) || *i > top)
            };
            if !grows(r.antecedent(), other.antecedent(), r.max_antecedent())
                || !grows(r.consequent(), other.consequent(), r.max_consequent())
            {
                continue;
            }
            if m.utility > t.bound_all() {
                violations.push(format!(
                    "{} u={} exceeds all-sides bound {} of {name}",
                    other.display(db.profits()),
                    m.utility,
                    t.bound_all()
                ));
            }
            if other.consequent() == r.consequent() && m.utility > t.bound_left() {
                violations.push(format!(
                    "{} u={} exceeds left bound {} of {name}",
                    other.display(db.profits()),
                    m.utility,
                    t.bound_left()
                ));
            }
        }
    };
    let (rules, _) = mine_observed(db, params, &mut observe).unwrap();
    BoundReport {
        rules,
        tables,
        violations,
    }
}

/// Random (rule, item, side) extensions on the databases of `seeds`: the
/// incremental table must equal a rebuild. Returns (checked, mismatches).
pub fn check_extensions(seeds: std::ops::Range<u64>, per_db: usize) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for seed in seeds {
        let db = super::random_db(seed);
        let universe = enumerate_rules(&db, None).unwrap();
        if universe.is_empty() {
            continue;
        }
        let index = DbIndex::new(&db);
        let alphabet = db.alphabet();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..per_db {
            let (rule, _) = &universe[rng.gen_range(0..universe.len())];
            let side = if rng.gen_bool(0.5) {
                Side::Left
            } else {
                Side::Right
            };
            let top = match side {
                Side::Left => rule.max_antecedent(),
                Side::Right => rule.max_consequent(),
            };
            let choices: Vec<_> = alphabet
                .iter()
                .copied()
                .filter(|&i| i > top && !rule.contains(i))
                .collect();
            if choices.is_empty() {
                continue;
            }
            let item = choices[rng.gen_range(0..choices.len())];
            let expanded = match side {
                Side::Left => rule.expand_left(item).unwrap(),
                Side::Right => rule.expand_right(item).unwrap(),
            };
            let table = build_utility_table(rule, &db).unwrap();
            let fast = extend_utility_table(&table, item, side, &index);
            let slow = build_utility_table(&expanded, &db).unwrap();
            if fast != slow {
                mismatches.push(format!(
                    "seed {seed}: {} + {item:?} on {side:?}",
                    rule.display(db.profits())
                ));
            }
            checked += 1;
        }
    }
    (checked, mismatches)
}
