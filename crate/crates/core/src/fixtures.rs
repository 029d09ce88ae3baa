//! The four-sequence running example, embedded for tests and examples.
//!
//! Two variants exist because the printed example is not self-consistent:
//! the quantity of `g` in the fourth sequence is printed as 3, but the printed
//! sequence utility of that sequence ($16) and the printed rule utilities
//! only work out with a quantity of 1.

use crate::seqdb::{parse_database_str, SequenceDatabase};

pub const RUNNING_EXAMPLE_DB: &str = include_str!("../fixtures/running_example.db");
pub const RUNNING_EXAMPLE_SU16_DB: &str = include_str!("../fixtures/running_example_su16.db");
pub const RUNNING_EXAMPLE_PROFITS: &str = include_str!("../fixtures/running_example.profits");

/// Quantities exactly as printed (`(g, 3)` in the fourth sequence).
pub fn running_example() -> SequenceDatabase {
    parse_database_str(RUNNING_EXAMPLE_DB, RUNNING_EXAMPLE_PROFITS)
        .expect("embedded fixture parses")
}

/// `(g, 1)` in the fourth sequence, matching SU = 16.
pub fn running_example_su16() -> SequenceDatabase {
    parse_database_str(RUNNING_EXAMPLE_SU16_DB, RUNNING_EXAMPLE_PROFITS)
        .expect("embedded fixture parses")
}
