//! Seeded synthetic databases.
//!
//! The generator is a ChaCha8 stream seeded with `seed_from_u64(seed)`, consumed
//! only through integer `gen_range` draws, so output is bit-identical across
//! platforms for a fixed seed. Draw order:
//!
//! 1. per item `k` (id order): decade `d` in `0..3`, then profit uniform in
//!    `[10^d, 10^(d+1))` (the top decade is `[100, 1000]`), giving a
//!    log-skewed profit in `[1, 1000]`;
//! 2. per sequence: itemset count in `1..=max_itemsets`; per itemset, size in
//!    `1..=max_itemset_size`; per slot, two uniform draws in `0..items` whose
//!    minimum is the item (low ids are popular), then a quantity in `1..=5`.
//!    An item already used in the sequence leaves the slot empty; an itemset
//!    left empty is dropped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::seqdb::{ItemId, ProfitTable, QItem, SequenceDatabase, Utility};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthConfig {
    pub items: usize,
    pub sequences: usize,
    pub max_itemsets: usize,
    pub max_itemset_size: usize,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(items: usize, sequences: usize, seed: u64) -> Self {
        Self {
            items,
            sequences,
            max_itemsets: 6,
            max_itemset_size: 3,
            seed,
        }
    }
}

pub fn generate(config: &SynthConfig) -> Result<SequenceDatabase> {
    if config.items == 0
        || config.sequences == 0
        || config.max_itemsets == 0
        || config.max_itemset_size == 0
    {
        return Err(Error::InvalidParams(
            "items, sequences, max itemsets and itemset size must all be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut profits = ProfitTable::new();
    for k in 0..config.items {
        let decade: u32 = rng.gen_range(0..3);
        let lo: Utility = 10u64.pow(decade);
        let profit = if decade == 2 {
            rng.gen_range(lo..=1000)
        } else {
            rng.gen_range(lo..lo * 10)
        };
        profits.insert(&format!("i{k}"), profit)?;
    }

    let mut raw = Vec::with_capacity(config.sequences);
    while raw.len() < config.sequences {
        let mut used = vec![false; config.items];
        let n_sets = rng.gen_range(1..=config.max_itemsets);
        let mut seq = Vec::with_capacity(n_sets);
        for _ in 0..n_sets {
            let size = rng.gen_range(1..=config.max_itemset_size);
            let mut set = Vec::with_capacity(size);
            for _ in 0..size {
                let a = rng.gen_range(0..config.items);
                let b = rng.gen_range(0..config.items);
                let item = a.min(b);
                let quantity = rng.gen_range(1..=5u32);
                if !used[item] {
                    used[item] = true;
                    set.push(QItem::new(ItemId(item as u32), quantity));
                }
            }
            if !set.is_empty() {
                seq.push(set);
            }
        }
        raw.push(seq);
    }
    SequenceDatabase::new(raw, profits)
}
