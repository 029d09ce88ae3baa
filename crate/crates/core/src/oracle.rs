//! Exhaustive reference implementation.
//!
//! Enumerates every assignment of the alphabet to {unused, antecedent,
//! consequent}, evaluates each rule by direct cut-point search over every
//! sequence, and filters with big-rational threshold arithmetic. No pruning,
//! no bit vectors, no utility tables: it shares nothing with the miner beyond
//! the database type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::miner::{MiningParams, RhusrSet, Threshold};
use crate::outlier::{Fraction, OutlierParams, OutlierReport, SequenceScore};
use crate::rules::{RuleMeasures, SequentialRule};
use crate::seqdb::{ItemId, QSequence, SequenceDatabase, SidSet, Utility};

/// Largest alphabet the 3^|I| enumeration accepts.
pub const MAX_ALPHABET: usize = 16;

/// Every occurring rule with its measures, in rule order.
pub type RuleUniverse = Vec<(SequentialRule, RuleMeasures)>;

fn has_item(seq: &QSequence, lo: usize, hi: usize, item: ItemId) -> bool {
    seq.itemsets()[lo..hi]
        .iter()
        .any(|set| set.items().iter().any(|q| q.item == item))
}

/// Some `p` with `1 <= p < m` puts X in the first `p` itemsets and Y after.
pub fn occurs_by_cut(x: &[ItemId], y: &[ItemId], seq: &QSequence) -> bool {
    let m = seq.itemsets().len();
    (1..m).any(|p| {
        x.iter().all(|&i| has_item(seq, 0, p, i)) && y.iter().all(|&i| has_item(seq, p, m, i))
    })
}

fn utility_of(items: &[ItemId], seq: &QSequence, db: &SequenceDatabase) -> Utility {
    let mut total = 0;
    for set in seq.itemsets() {
        for q in set.items() {
            if items.contains(&q.item) {
                total += u64::from(q.quantity) * db.profits().profit(q.item).unwrap_or(0);
            }
        }
    }
    total
}

fn evaluate(x: &[ItemId], y: &[ItemId], db: &SequenceDatabase) -> RuleMeasures {
    let n = db.len();
    let mut sids = SidSet::new(n);
    let mut utility = 0;
    let mut antecedent_count = 0;
    let both: Vec<ItemId> = x.iter().chain(y).copied().collect();
    for seq in db.sequences() {
        let m = seq.itemsets().len();
        if x.iter().all(|&i| has_item(seq, 0, m, i)) {
            antecedent_count += 1;
        }
        if occurs_by_cut(x, y, seq) {
            sids.insert(seq.sid());
            utility += utility_of(&both, seq, db);
        }
    }
    RuleMeasures {
        support_count: sids.count(),
        antecedent_count,
        db_size: n,
        utility,
        sids,
    }
}

/// All rules occurring in at least one sequence, optionally restricted to
/// `|X| * |Y| <= size_cap`.
pub fn enumerate_rules(db: &SequenceDatabase, size_cap: Option<usize>) -> Result<RuleUniverse> {
    let alphabet = db.alphabet();
    let k = alphabet.len();
    if k > MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            items: k,
            limit: MAX_ALPHABET,
        });
    }
    let total = 3usize.pow(k as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for &item in &alphabet {
            match c % 3 {
                1 => x.push(item),
                2 => y.push(item),
                _ => {}
            }
            c /= 3;
        }
        if x.is_empty() || y.is_empty() {
            continue;
        }
        if size_cap.is_some_and(|cap| x.len() * y.len() > cap) {
            continue;
        }
        let m = evaluate(&x, &y, db);
        if m.support_count > 0 {
            out.push((SequentialRule::new(x, y)?, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big_ratio(r: num_rational::Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn threshold(t: Threshold, n: usize) -> BigRational {
    match t {
        Threshold::Fraction(f) => big_ratio(f),
        Threshold::Count(c) => big(c) / big(n as u64),
    }
}

/// Applies the rare high-utility filter to an already enumerated universe.
pub fn filter_universe(
    universe: &RuleUniverse,
    db: &SequenceDatabase,
    params: &MiningParams,
) -> RhusrSet {
    let n = db.len();
    let minsup = threshold(params.minsup, n);
    let maxsup = threshold(params.maxsup, n);
    let minconf = big_ratio(params.minconf);
    let rules = universe
        .iter()
        .filter(|(_, m)| {
            let sup = big(m.support_count as u64) / big(n as u64);
            let conf = if m.antecedent_count == 0 {
                BigRational::zero()
            } else {
                big(m.support_count as u64) / big(m.antecedent_count as u64)
            };
            let rare = if params.maxsup_inclusive {
                sup <= maxsup
            } else {
                sup < maxsup
            };
            sup >= minsup && rare && m.utility >= params.minutil && conf >= minconf
        })
        .cloned()
        .collect();
    RhusrSet::from_unsorted(rules)
}

pub fn oracle_mine(db: &SequenceDatabase, params: &MiningParams) -> Result<RhusrSet> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    params.normalize(db.len())?;
    Ok(filter_universe(&enumerate_rules(db, None)?, db, params))
}

fn to_fraction(x: &BigRational) -> Fraction {
    Fraction::new(
        x.numer().to_i128().expect("score numerator fits i128"),
        x.denom().to_i128().expect("score denominator fits i128"),
    )
}

/// Outlier scores by direct formula evaluation per sequence.
pub fn oracle_detect(
    db: &SequenceDatabase,
    rules: &RhusrSet,
    params: &OutlierParams,
    maxsup: Threshold,
) -> Result<OutlierReport> {
    let n = db.len();
    let maxsup = threshold(maxsup, n);
    let count = rules.len();
    let v = big_ratio(params.v);
    let df: Vec<BigRational> = rules
        .iter()
        .map(|(_, m)| {
            (maxsup.clone() - big(m.support_count as u64) / big(n as u64))
                / big(count.max(1) as u64)
        })
        .collect();

    let scores = db
        .sequences()
        .iter()
        .map(|seq| {
            let hits: Vec<usize> = rules
                .iter()
                .enumerate()
                .filter(|(_, (r, _))| occurs_by_cut(r.antecedent(), r.consequent(), seq))
                .map(|(k, _)| k)
                .collect();
            let a: BigRational = hits
                .iter()
                .map(|&k| df[k].clone())
                .fold(BigRational::zero(), |acc, d| acc + d);
            let swf = if count == 0 {
                BigRational::zero()
            } else {
                big(hits.len() as u64) / big(count as u64)
            };
            let of = BigRational::one() - swf.clone() * a.clone();
            let flagged = of >= v && (!params.require_rule || !hits.is_empty());
            SequenceScore {
                sid: seq.sid(),
                contained_rule_count: hits.len(),
                deviation_sum: to_fraction(&a),
                swf: to_fraction(&swf),
                of: to_fraction(&of),
                is_outlier: flagged,
            }
        })
        .collect();

    let deviations = rules
        .rules()
        .zip(&df)
        .map(|(r, d)| (r.clone(), to_fraction(d)))
        .collect();
    Ok(OutlierReport { scores, deviations })
}
