//! Sweeps minutil over a synthetic database for the full strategy set and
//! the two ablations, printing the CSV the `bench` subcommand writes.
//!
//! cargo run --release --example minutil_sweep

use rhusr::bench::{sweep, write_csv};
use rhusr::miner::MiningParams;
use rhusr::synth::{generate, SynthConfig};

fn main() -> rhusr::Result<()> {
    let db = generate(&SynthConfig::new(40, 500, 7))?;
    let base = MiningParams::new(0, 0.1, 0.01, 0.2);
    let rows = sweep(&db, &base, &[5_000, 10_000, 20_000, 40_000])?;
    write_csv(&rows, true, std::io::stdout().lock())
}
