use std::fmt;

/// Fixed-width bit vector over sequence ids. Bit `p` is set iff the subject
/// occurs in sequence `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SidSet {
    width: usize,
    words: Vec<u64>,
}

impl SidSet {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    /// All `width` bits set.
    pub fn full(width: usize) -> Self {
        let mut set = Self::new(width);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.clear_tail();
        set
    }

    pub fn from_sids<I: IntoIterator<Item = usize>>(width: usize, sids: I) -> Self {
        let mut set = Self::new(width);
        for sid in sids {
            set.insert(sid);
        }
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// # Panics
    /// If `sid >= width`.
    pub fn insert(&mut self, sid: usize) {
        assert!(
            sid < self.width,
            "sid {sid} out of range for width {}",
            self.width
        );
        self.words[sid / 64] |= 1u64 << (sid % 64);
    }

    pub fn contains(&self, sid: usize) -> bool {
        sid < self.width && self.words[sid / 64] & (1u64 << (sid % 64)) != 0
    }

    /// Population count.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &SidSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn intersection(&self, other: &SidSet) -> SidSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Popcount of `self & other` without allocating.
    pub fn intersection_count(&self, other: &SidSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Set bits in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for SidSet {
    /// Renders as a bit string, sid 0 first (the `1110` style).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..self.width)
            .map(|p| if self.contains(p) { '1' } else { '0' })
            .collect();
        write!(f, "SidSet({bits})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_count() {
        for width in [0, 1, 4, 63, 64, 65, 130] {
            let s = SidSet::full(width);
            assert_eq!(s.count(), width);
            assert_eq!(s.iter().collect::<Vec<_>>(), (0..width).collect::<Vec<_>>());
        }
    }

    #[test]
    fn intersection_of_running_example_items() {
        // a: 1111, e: 1110 -> {a,e}: 1110
        let a = SidSet::full(4);
        let e = SidSet::from_sids(4, [0, 1, 2]);
        let ae = a.intersection(&e);
        assert_eq!(format!("{ae:?}"), "SidSet(1110)");
        assert_eq!(ae.count(), 3);
        assert_eq!(a.intersection_count(&e), 3);
    }

    #[test]
    fn contains_out_of_range_is_false() {
        let s = SidSet::full(3);
        assert!(!s.contains(3));
        assert!(!s.contains(1000));
    }

    #[test]
    #[should_panic]
    fn insert_out_of_range_panics() {
        SidSet::new(2).insert(2);
    }
}
