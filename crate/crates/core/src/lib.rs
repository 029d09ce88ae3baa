//! Rare high-utility sequential rule mining and rule-based outlier scoring.
//!
//! Sequences carry per-item purchase quantities; a profit table gives each
//! item a unit value. The miner finds every rule `X => Y` that is rare
//! (`minsup <= sup < maxsup`), valuable (`u >= minutil`) and confident
//! (`conf >= minconf`), growing 1*1 rules with left and right expansions over
//! utility tables. The outlier stage then scores each sequence by the rare
//! rules it contains.
//!
//! ```
//! use rhusr::{fixtures, miner::{mine, MiningParams}};
//!
//! let db = fixtures::running_example_su16();
//! let rules = mine(&db, &MiningParams::new(41, 0.7, 0.25, 1.0)).unwrap();
//! assert_eq!(rules.len(), 3);
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod miner;
pub mod oracle;
pub mod outlier;
pub mod rules;
pub mod seqdb;
pub mod synth;

pub use error::{Error, Result};
pub use miner::{mine, MiningParams, RhusrSet, Strategies, Threshold};
pub use outlier::{detect, OutlierParams, OutlierReport};
pub use rules::{RuleMeasures, SequentialRule};
pub use seqdb::{ItemId, SequenceDatabase};
