use std::collections::HashMap;

use crate::seqdb::ItemId;

/// Support counts of every observed 1*1 rule `i => j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleCountMatrix {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Dense { width: usize, counts: Vec<u32> },
    Sparse(HashMap<(ItemId, ItemId), u32>),
}

/// Alphabets up to this size use a dense `width * width` array.
const DENSE_LIMIT: usize = 1024;

impl RuleCountMatrix {
    /// `alphabet_size` bounds every item id that will be inserted.
    pub fn new(alphabet_size: usize) -> Self {
        let repr = if alphabet_size <= DENSE_LIMIT {
            Repr::Dense {
                width: alphabet_size,
                counts: vec![0; alphabet_size * alphabet_size],
            }
        } else {
            Repr::Sparse(HashMap::new())
        };
        Self { repr }
    }

    pub fn set(&mut self, i: ItemId, j: ItemId, count: usize) {
        let count = count as u32;
        match &mut self.repr {
            Repr::Dense { width, counts } => counts[i.index() * *width + j.index()] = count,
            Repr::Sparse(map) => {
                map.insert((i, j), count);
            }
        }
    }

    /// Support count of `i => j`; 0 when never observed.
    #[inline]
    pub fn get(&self, i: ItemId, j: ItemId) -> usize {
        match &self.repr {
            Repr::Dense { width, counts } => {
                if i.index() < *width && j.index() < *width {
                    counts[i.index() * *width + j.index()] as usize
                } else {
                    0
                }
            }
            Repr::Sparse(map) => map.get(&(i, j)).copied().unwrap_or(0) as usize,
        }
    }

    /// Number of non-zero entries.
    pub fn nonzero(&self) -> usize {
        match &self.repr {
            Repr::Dense { counts, .. } => counts.iter().filter(|&&c| c > 0).count(),
            Repr::Sparse(map) => map.values().filter(|&&c| c > 0).count(),
        }
    }
}
