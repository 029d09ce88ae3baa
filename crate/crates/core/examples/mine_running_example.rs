//! Mines the four-sequence running example and prints each rule with its
//! measures, then shows what the strategy toggles cost.
//!
//! cargo run --example mine_running_example

use rhusr::fixtures;
use rhusr::miner::{mine_with_telemetry, MiningParams, Strategies};

fn main() -> rhusr::Result<()> {
    let params = MiningParams::new(41, 0.7, 0.25, 1.0);

    for (label, db) in [
        ("reconciled (g,1) in S4", fixtures::running_example_su16()),
        ("as printed (g,3) in S4", fixtures::running_example()),
    ] {
        let (rules, telemetry) = mine_with_telemetry(&db, &params)?;
        println!("{label}: {} rules", rules.len());
        for (rule, m) in &rules {
            println!(
                "  {:<18} sup={} conf={} u={}",
                rule.display(db.profits()).to_string(),
                m.support(),
                m.confidence(),
                m.utility
            );
        }
        println!(
            "  candidates={} tables={}",
            telemetry.candidates_generated, telemetry.tables_built
        );
    }

    let db = fixtures::running_example_su16();
    let (_, bare) = mine_with_telemetry(&db, &params.clone().with_strategies(Strategies::none()))?;
    println!(
        "without pruning: candidates={} tables={}",
        bare.candidates_generated, bare.tables_built
    );
    Ok(())
}
