use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rules::RuleMeasures;
use crate::seqdb::Utility;

/// A support threshold, either a fraction of |SD| or an absolute sequence count.
///
/// Parses from `0.25` (exact decimal fraction), `1/3`, or `2c` (count).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Fraction(Ratio<u64>),
    Count(u64),
}

impl Threshold {
    /// Threshold as a fraction of a database of `n` sequences.
    pub fn as_fraction(&self, n: usize) -> Ratio<u64> {
        match *self {
            Threshold::Fraction(f) => f,
            Threshold::Count(c) => Ratio::new(c, n.max(1) as u64),
        }
    }
}

impl From<f64> for Threshold {
    /// Convenience for literals; goes through the decimal rendering so that
    /// `0.7` means exactly 7/10.
    fn from(value: f64) -> Self {
        value
            .to_string()
            .parse()
            .unwrap_or_else(|_| panic!("`{value}` is not a valid threshold"))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Fraction(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Threshold::Count(c) => write!(f, "{c}c"),
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(count) = s.strip_suffix('c') {
            return count
                .parse()
                .map(Threshold::Count)
                .map_err(|_| Error::InvalidParams(format!("invalid count threshold `{s}`")));
        }
        parse_fraction(s).map(Threshold::Fraction)
    }
}

/// Parses `0.25`, `1`, `.5` or `1/3` into an exact non-negative fraction.
pub fn parse_fraction(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::InvalidParams(format!("invalid fraction `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || int.len() + frac.len() > 18
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: u64 = digits.parse().map_err(|_| bad())?;
    Ok(Ratio::new(numer, 10u64.pow(frac.len() as u32)))
}

/// Individually switchable pruning strategies, numbered 1..=7:
///
/// 1. drop items with SEU < minutil or support < minsup before mining
/// 2. drop 1*1 rules with SEU < minutil
/// 3. stop at rules whose support is below minsup
/// 4. veto left expansions by `i` when some `RCM(i, j)`, `j ∈ Y`, is below minsup
/// 5. veto right expansions by `i` when some `RCM(j, i)`, `j ∈ X`, is below minsup
/// 6. no right expansion when Σ(iutil+lutil+rutil+lrutil) < minutil
/// 7. no left expansion when Σ(iutil+lutil+lrutil) < minutil
///
/// Toggles change only the work done, never the mined rule set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strategies([bool; 7]);

impl Strategies {
    pub const COUNT: usize = 7;

    pub fn all() -> Self {
        Self([true; 7])
    }

    pub fn none() -> Self {
        Self([false; 7])
    }

    /// Bit `k-1` of `mask` enables strategy `k`.
    pub fn from_mask(mask: u8) -> Self {
        let mut s = Self::none();
        for k in 1..=7 {
            s.0[k - 1] = mask & (1 << (k - 1)) != 0;
        }
        s
    }

    pub fn mask(&self) -> u8 {
        (1..=7)
            .filter(|&k| self.enabled(k))
            .map(|k| 1u8 << (k - 1))
            .sum()
    }

    /// # Panics
    /// If `k` is not in `1..=7`.
    pub fn enabled(&self, k: usize) -> bool {
        self.0[k - 1]
    }

    pub fn set(&mut self, k: usize, on: bool) {
        self.0[k - 1] = on;
    }

    pub fn with(mut self, k: usize) -> Self {
        self.set(k, true);
        self
    }

    pub fn without(mut self, k: usize) -> Self {
        self.set(k, false);
        self
    }
}

impl Default for Strategies {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningParams {
    pub minutil: Utility,
    pub minconf: Ratio<u64>,
    pub minsup: Threshold,
    pub maxsup: Threshold,
    /// Admit `sup(r) == maxsup`. Off by default: rareness is strict.
    pub maxsup_inclusive: bool,
    pub strategies: Strategies,
    /// Worker threads for independent 1*1 subtrees; 0 uses the rayon default
    /// and 1 runs everything on the calling thread.
    pub threads: usize,
}

impl MiningParams {
    pub fn new(
        minutil: Utility,
        minconf: impl Into<Threshold>,
        minsup: impl Into<Threshold>,
        maxsup: impl Into<Threshold>,
    ) -> Self {
        let minconf = match minconf.into() {
            Threshold::Fraction(f) => f,
            Threshold::Count(c) => Ratio::from_integer(c),
        };
        Self {
            minutil,
            minconf,
            minsup: minsup.into(),
            maxsup: maxsup.into(),
            maxsup_inclusive: false,
            strategies: Strategies::all(),
            threads: 1,
        }
    }

    pub fn with_strategies(mut self, strategies: Strategies) -> Self {
        self.strategies = strategies;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_maxsup_inclusive(mut self, inclusive: bool) -> Self {
        self.maxsup_inclusive = inclusive;
        self
    }

    /// Checks `0 <= minsup <= maxsup <= 1` against a database of `n`
    /// sequences and converts the thresholds to counts.
    pub fn normalize(&self, n: usize) -> Result<Bounds> {
        if n == 0 {
            return Err(Error::EmptyDatabase);
        }
        let one = Ratio::from_integer(1);
        let min = self.minsup.as_fraction(n);
        let max = self.maxsup.as_fraction(n);
        if max > one {
            return Err(Error::InvalidParams(format!(
                "maxsup {} exceeds 1",
                self.maxsup
            )));
        }
        if min > max {
            return Err(Error::InvalidParams(format!(
                "minsup {} exceeds maxsup {}",
                self.minsup, self.maxsup
            )));
        }
        let min_count = match self.minsup {
            Threshold::Count(c) => c,
            // ceil(p * n / q)
            Threshold::Fraction(f) => {
                let scaled = u128::from(*f.numer()) * n as u128;
                scaled.div_ceil(u128::from(*f.denom())) as u64
            }
        };
        Ok(Bounds {
            db_size: n as u64,
            min_count,
            max,
            maxsup_inclusive: self.maxsup_inclusive,
            minutil: self.minutil,
            minconf: self.minconf,
        })
    }
}

/// Thresholds resolved against a concrete database size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub db_size: u64,
    pub min_count: u64,
    pub max: Ratio<u64>,
    pub maxsup_inclusive: bool,
    pub minutil: Utility,
    pub minconf: Ratio<u64>,
}

impl Bounds {
    pub fn frequent_enough(&self, count: usize) -> bool {
        count as u64 >= self.min_count
    }

    /// `count / |SD| < maxsup` (or `<=` in inclusive mode), compared exactly.
    pub fn rare(&self, count: usize) -> bool {
        let lhs = count as u128 * u128::from(*self.max.denom());
        let rhs = u128::from(*self.max.numer()) * u128::from(self.db_size);
        if self.maxsup_inclusive {
            lhs <= rhs
        } else {
            lhs < rhs
        }
    }

    pub fn confident(&self, support_count: usize, antecedent_count: usize) -> bool {
        support_count as u128 * u128::from(*self.minconf.denom())
            >= u128::from(*self.minconf.numer()) * antecedent_count as u128
            && (antecedent_count > 0 || *self.minconf.numer() == 0)
    }

    /// The full rare high-utility test.
    pub fn qualifies(&self, m: &RuleMeasures) -> bool {
        m.support_count > 0
            && self.frequent_enough(m.support_count)
            && self.rare(m.support_count)
            && m.utility >= self.minutil
            && self.confident(m.support_count, m.antecedent_count)
    }
}
