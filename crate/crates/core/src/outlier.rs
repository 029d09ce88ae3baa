//! Rule-based outlier scoring of sequences.
//!
//! Each mined rule gets a deviation factor `DF(r) = (maxsup - sup(r)) / |R|`.
//! A sequence containing `S(s)` of the rules, whose deviation factors sum to
//! `A(s)`, has weighting factor `SWF(s) = S(s) / |R|` and outlier factor
//! `OF(s) = 1 - SWF(s) * A(s)`. It is flagged when `OF(s) >= v`.
//!
//! All scores are exact rationals; decimal rendering happens only on output.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::miner::{RhusrSet, Threshold};
use crate::rules::{occurs_in, SequentialRule};
use crate::seqdb::SequenceDatabase;

pub type Fraction = Ratio<i128>;

/// Label attached to flagged sequences in reports.
pub const REPORT_LABEL: &str = "UOSR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutlierParams {
    pub v: Ratio<u64>,
    /// Only sequences containing at least one rule can be flagged. Turning
    /// this off reproduces the unrestricted `OF(s) >= v` test, which flags
    /// every rule-free sequence (their OF is 1).
    pub require_rule: bool,
}

impl OutlierParams {
    pub fn new(v: Ratio<u64>) -> Result<Self> {
        if v > Ratio::one() {
            return Err(Error::InvalidParams(format!(
                "outlier threshold {}/{} exceeds 1",
                v.numer(),
                v.denom()
            )));
        }
        Ok(Self {
            v,
            require_rule: true,
        })
    }

    pub fn literal(mut self) -> Self {
        self.require_rule = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceScore {
    pub sid: usize,
    /// S(s).
    pub contained_rule_count: usize,
    /// A(s).
    pub deviation_sum: Fraction,
    pub swf: Fraction,
    pub of: Fraction,
    pub is_outlier: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutlierReport {
    pub scores: Vec<SequenceScore>,
    /// DF per rule, in rule-set order.
    pub deviations: Vec<(SequentialRule, Fraction)>,
}

impl OutlierReport {
    pub fn outliers(&self) -> impl Iterator<Item = &SequenceScore> + '_ {
        self.scores.iter().filter(|s| s.is_outlier)
    }
}

pub(crate) fn to_fraction(r: Ratio<u64>) -> Fraction {
    Ratio::new(i128::from(*r.numer()), i128::from(*r.denom()))
}

/// (maxsup - sup) / |R|.
pub fn deviation_factor(
    support: Ratio<u64>,
    maxsup: Ratio<u64>,
    rhusr_count: usize,
) -> Result<Fraction> {
    if rhusr_count == 0 {
        return Err(Error::NoRules);
    }
    Ok((to_fraction(maxsup) - to_fraction(support)) / Fraction::from_integer(rhusr_count as i128))
}

/// Scores every sequence of `db` against `rules`. "Contains" means the rule
/// occurs in the sequence.
pub fn detect(
    db: &SequenceDatabase,
    rules: &RhusrSet,
    params: &OutlierParams,
    maxsup: Threshold,
) -> Result<OutlierReport> {
    let n = db.len();
    let maxsup = maxsup.as_fraction(n);
    let count = rules.len();
    let deviations = rules
        .iter()
        .map(|(rule, m)| Ok((rule.clone(), deviation_factor(m.support(), maxsup, count)?)))
        .collect::<Result<Vec<_>>>()?;
    let v = to_fraction(params.v);

    let scores = db
        .sequences()
        .iter()
        .map(|seq| {
            let mut contained = 0usize;
            let mut deviation_sum = Fraction::zero();
            for (rule, df) in &deviations {
                if occurs_in(rule, seq).is_some() {
                    contained += 1;
                    deviation_sum += df;
                }
            }
            let swf = if count == 0 {
                Fraction::zero()
            } else {
                Fraction::new(contained as i128, count as i128)
            };
            let of = Fraction::one() - swf * deviation_sum;
            SequenceScore {
                sid: seq.sid(),
                contained_rule_count: contained,
                deviation_sum,
                swf,
                of,
                is_outlier: of >= v && (!params.require_rule || contained >= 1),
            }
        })
        .collect();
    Ok(OutlierReport { scores, deviations })
}

/// Rounds half away from zero to `places` decimals.
pub fn render_decimal(x: &Fraction, places: u32) -> String {
    let scale = 10i128.pow(places);
    let neg = *x.numer() < 0;
    let num = x.numer().abs() * scale;
    let den = *x.denom();
    let rounded = (num + den / 2) / den;
    let int = rounded / scale;
    let frac = rounded % scale;
    let sign = if neg && rounded != 0 { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0width$}", width = places as usize)
    }
}

fn render_exact(x: &Fraction) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `sid\trule_count\tswf\tof\toutlier`, one line per sequence after a header.
pub fn write_tsv<W: std::io::Write>(report: &OutlierReport, mut out: W) -> Result<()> {
    writeln!(out, "sid\trule_count\tswf\tof\toutlier")?;
    for s in &report.scores {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            s.sid,
            s.contained_rule_count,
            render_decimal(&s.swf, 4),
            render_decimal(&s.of, 4),
            s.is_outlier
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRule {
    rule: String,
    df: String,
    df_decimal: String,
}

#[derive(Serialize)]
struct JsonScore {
    sid: usize,
    rule_count: usize,
    deviation_sum: String,
    swf: String,
    of: String,
    of_exact: String,
    outlier: bool,
}

#[derive(Serialize)]
struct JsonReport {
    label: &'static str,
    rules: Vec<JsonRule>,
    sequences: Vec<JsonScore>,
}

pub fn write_json<W: std::io::Write>(
    report: &OutlierReport,
    db: &SequenceDatabase,
    mut out: W,
) -> Result<()> {
    let doc = JsonReport {
        label: REPORT_LABEL,
        rules: report
            .deviations
            .iter()
            .map(|(r, df)| JsonRule {
                rule: r.display(db.profits()).to_string(),
                df: render_exact(df),
                df_decimal: render_decimal(df, 4),
            })
            .collect(),
        sequences: report
            .scores
            .iter()
            .map(|s| JsonScore {
                sid: s.sid,
                rule_count: s.contained_rule_count,
                deviation_sum: render_decimal(&s.deviation_sum, 4),
                swf: render_decimal(&s.swf, 4),
                of: render_decimal(&s.of, 4),
                of_exact: render_exact(&s.of),
                outlier: s.is_outlier,
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::miner::{mine, MiningParams};

    fn f(n: i128, d: i128) -> Fraction {
        Fraction::new(n, d)
    }

    #[test]
    fn deviation_factor_examples() {
        let one = Ratio::from_integer(1);
        assert_eq!(
            deviation_factor(Ratio::new(3, 4), one, 3).unwrap(),
            f(1, 12)
        );
        assert_eq!(render_decimal(&f(1, 12), 3), "0.083");
        assert_eq!(deviation_factor(Ratio::new(1, 2), one, 1).unwrap(), f(1, 2));
        assert_eq!(deviation_factor(one, one, 4).unwrap(), f(0, 1));
        assert!(matches!(deviation_factor(one, one, 0), Err(Error::NoRules)));
    }

    #[test]
    fn running_example_scores() {
        let db = fixtures::running_example_su16();
        let params = MiningParams::new(41, 0.7, 0.25, 1.0);
        let rules = mine(&db, &params).unwrap();
        assert_eq!(rules.len(), 3);
        let report = detect(
            &db,
            &rules,
            &OutlierParams::new(Ratio::new(7, 10)).unwrap(),
            params.maxsup,
        )
        .unwrap();
        for (_, df) in &report.deviations {
            assert_eq!(*df, f(1, 12));
        }
        let s1 = &report.scores[0];
        assert_eq!(s1.contained_rule_count, 3);
        assert_eq!(s1.deviation_sum, f(1, 4));
        assert_eq!(s1.swf, f(1, 1));
        assert_eq!(s1.of, f(3, 4));
        assert!(s1.is_outlier);
        // S_3 has neither c nor g.
        let s3 = &report.scores[2];
        assert_eq!(s3.swf, f(0, 1));
        assert_eq!(s3.of, f(1, 1));
        assert!(!s3.is_outlier);
    }

    #[test]
    fn literal_mode_flags_rule_free_sequences() {
        let db = fixtures::running_example_su16();
        let params = MiningParams::new(41, 0.7, 0.25, 1.0);
        let rules = mine(&db, &params).unwrap();
        let op = OutlierParams::new(Ratio::new(7, 10)).unwrap().literal();
        let report = detect(&db, &rules, &op, params.maxsup).unwrap();
        assert!(report.scores[2].is_outlier);
    }

    #[test]
    fn empty_rule_set() {
        let db = fixtures::running_example();
        let report = detect(
            &db,
            &RhusrSet::default(),
            &OutlierParams::new(Ratio::new(1, 2)).unwrap(),
            Threshold::from(1.0),
        )
        .unwrap();
        for s in &report.scores {
            assert_eq!(s.swf, f(0, 1));
            assert_eq!(s.of, f(1, 1));
            assert!(!s.is_outlier);
        }
    }

    #[test]
    fn v_above_one_is_rejected() {
        assert!(OutlierParams::new(Ratio::new(11, 10)).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(&f(3, 4), 4), "0.7500");
        assert_eq!(render_decimal(&f(1, 12), 4), "0.0833");
        assert_eq!(render_decimal(&f(751, 1000), 2), "0.75");
        assert_eq!(render_decimal(&f(1, 1), 4), "1.0000");
        assert_eq!(render_decimal(&f(-1, 8), 2), "-0.13");
        assert_eq!(render_decimal(&f(0, 1), 0), "0");
    }
}
