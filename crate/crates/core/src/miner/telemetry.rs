use serde::{Deserialize, Serialize};

/// Work counters for one mining run, written as one JSON line per run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Telemetry {
    pub rules_found: u64,
    /// 1*1 rules that occur plus expansion candidates that survive the RCM
    /// vetoes.
    pub candidates_generated: u64,
    pub tables_built: u64,
    /// Index `k - 1` counts what strategy `k` cut: items (1), 1*1 rules (2),
    /// candidates (3, 4, 5), or expansion calls (6, 7).
    pub pruned_by_strategy: [u64; 7],
    pub runtime_ms: u64,
    pub peak_mem_bytes: u64,
}

impl Telemetry {
    pub(crate) fn merge(&mut self, other: &Telemetry) {
        self.rules_found += other.rules_found;
        self.candidates_generated += other.candidates_generated;
        self.tables_built += other.tables_built;
        for (a, b) in self
            .pruned_by_strategy
            .iter_mut()
            .zip(other.pruned_by_strategy)
        {
            *a += b;
        }
    }

    pub(crate) fn pruned(&mut self, strategy: usize) {
        self.pruned_by_strategy[strategy - 1] += 1;
    }
}

/// Peak resident set size of this process, from `/proc/self/status`.
/// Returns 0 where that file is unavailable.
pub fn peak_memory_bytes() -> u64 {
    std::fs::read_to_string("/proc/self/status")
        .ok()
        .and_then(|status| {
            status
                .lines()
                .find(|l| l.starts_with("VmHWM:"))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|kb| kb.parse::<u64>().ok())
        })
        .map_or(0, |kb| kb * 1024)
}
