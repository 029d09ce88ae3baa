//! minutil sweeps across strategy profiles.

use std::io::Write;

use crate::error::Result;
use crate::miner::{mine_with_telemetry, MiningParams, Strategies};
use crate::seqdb::{SequenceDatabase, Utility};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub name: &'static str,
    pub strategies: Strategies,
}

/// Full strategy set, then the two ablations: no item pruning (strategy 1)
/// and no 1*1 rule pruning (strategy 2).
pub fn profiles() -> [Profile; 3] {
    [
        Profile {
            name: "full",
            strategies: Strategies::all(),
        },
        Profile {
            name: "no-s1",
            strategies: Strategies::all().without(1),
        },
        Profile {
            name: "no-s2",
            strategies: Strategies::all().without(2),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub minutil: Utility,
    pub profile: &'static str,
    pub rules: u64,
    pub candidates: u64,
    pub tables_built: u64,
    pub runtime_ms: u64,
    pub peak_mem_bytes: u64,
}

/// One row per (minutil, profile), minutils in the given order.
pub fn sweep(
    db: &SequenceDatabase,
    base: &MiningParams,
    minutils: &[Utility],
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(minutils.len() * 3);
    for &minutil in minutils {
        for profile in profiles() {
            let params = MiningParams {
                minutil,
                strategies: profile.strategies,
                ..base.clone()
            };
            let (set, t) = mine_with_telemetry(db, &params)?;
            rows.push(BenchRow {
                minutil,
                profile: profile.name,
                rules: set.len() as u64,
                candidates: t.candidates_generated,
                tables_built: t.tables_built,
                runtime_ms: t.runtime_ms,
                peak_mem_bytes: t.peak_mem_bytes,
            });
        }
    }
    Ok(rows)
}

/// CSV with a header. With `timings` off the runtime and memory columns are
/// written as 0 so the file is reproducible byte for byte.
pub fn write_csv<W: Write>(rows: &[BenchRow], timings: bool, mut out: W) -> Result<()> {
    writeln!(
        out,
        "minutil,profile,rules,candidates,tables_built,runtime_ms,peak_mem_bytes"
    )?;
    for r in rows {
        let (ms, mem) = if timings {
            (r.runtime_ms, r.peak_mem_bytes)
        } else {
            (0, 0)
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.minutil, r.profile, r.rules, r.candidates, r.tables_built, ms, mem
        )?;
    }
    Ok(())
}
