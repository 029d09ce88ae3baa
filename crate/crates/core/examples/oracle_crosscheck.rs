//! Compares the pruned miner with exhaustive enumeration on a batch of small
//! random databases.
//!
//! cargo run --release --example oracle_crosscheck [-- SEEDS]

use rhusr::miner::{mine, MiningParams};
use rhusr::oracle::oracle_mine;
use rhusr::synth::{generate, SynthConfig};

fn main() -> rhusr::Result<()> {
    let seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let settings = [
        MiningParams::new(0, 0.0, 0.0, 1.0),
        MiningParams::new(20, 0.5, 0.2, 0.8),
        MiningParams::new(100, 0.0, 0.0, 0.5),
    ];
    let mut total = 0;
    for seed in 0..seeds {
        let cfg = SynthConfig {
            max_itemsets: 5,
            ..SynthConfig::new(6, 8, seed)
        };
        let db = generate(&cfg)?;
        for params in &settings {
            let fast = mine(&db, params)?;
            let slow = oracle_mine(&db, params)?;
            assert_eq!(fast, slow, "seed {seed}, {params:?}");
            total += fast.len();
        }
    }
    println!(
        "{seeds} databases x {} settings agree ({total} rules in all)",
        settings.len()
    );
    Ok(())
}
