//! Small random databases shared by the property and acceptance tests.
#![allow(dead_code)]

pub mod checks;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhusr::miner::{MiningParams, Threshold};
use rhusr::seqdb::{ItemId, ProfitTable, QItem, SequenceDatabase};

pub const MAX_ITEMS: usize = 6;
pub const MAX_SEQUENCES: usize = 8;
pub const MAX_ITEMSETS: usize = 5;

/// At most 6 items, 2 to 8 sequences and 5 itemsets per sequence. Each item lands
/// in a sequence at most once, at a random itemset slot.
pub fn random_db(seed: u64) -> SequenceDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = rng.gen_range(2..=MAX_ITEMS);
    let profits: Vec<u64> = (0..items).map(|_| rng.gen_range(1..=10)).collect();
    let n = rng.gen_range(2..=MAX_SEQUENCES);
    let density = rng.gen_range(0.3..0.9);
    let raw = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=MAX_ITEMSETS);
            let mut sets: Vec<Vec<QItem>> = vec![Vec::new(); len];
            for k in 0..items {
                if rng.gen_bool(density) {
                    let q = QItem::new(ItemId(k as u32), rng.gen_range(1..=5));
                    sets[rng.gen_range(0..len)].push(q);
                }
            }
            sets.retain(|s| !s.is_empty());
            if sets.is_empty() {
                sets.push(vec![QItem::new(ItemId(rng.gen_range(0..items) as u32), 1)]);
            }
            sets
        })
        .collect();
    SequenceDatabase::new(raw, ProfitTable::from_profits(&profits).unwrap()).unwrap()
}

/// Four threshold settings: permissive, rare-and-confident, count-based
/// inclusive, and narrow-band high utility.
pub fn settings() -> Vec<MiningParams> {
    vec![
        MiningParams::new(0, 0.0, 0.0, 1.0),
        MiningParams::new(20, 0.5, 0.25, 0.75),
        MiningParams::new(10, 0.0, Threshold::Count(2), 1.0).with_maxsup_inclusive(true),
        MiningParams::new(40, 0.3, 0.125, 0.5),
    ]
}

pub fn corpus(count: u64) -> impl Iterator<Item = SequenceDatabase> {
    (0..count).map(random_db)
}
