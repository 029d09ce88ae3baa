//! JSON-lines rule files.
//!
//! One object per rule:
//! `{"antecedent":["a","b"],"consequent":["g"],"support":0.75,"support_count":3,"confidence":1.0,"utility":57}`

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::miner::RhusrSet;
use crate::rules::{measures, ratio_to_f64, SequentialRule};
use crate::seqdb::{compute_item_stats, SequenceDatabase, Utility};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support: f64,
    pub support_count: usize,
    pub confidence: f64,
    pub utility: Utility,
}

pub fn write_rules<W: Write>(rules: &RhusrSet, db: &SequenceDatabase, mut out: W) -> Result<()> {
    let names = |items: &[crate::seqdb::ItemId]| -> Vec<String> {
        items
            .iter()
            .map(|&i| db.profits().name(i).to_string())
            .collect()
    };
    for (rule, m) in rules {
        let record = RuleRecord {
            antecedent: names(rule.antecedent()),
            consequent: names(rule.consequent()),
            support: ratio_to_f64(m.support()),
            support_count: m.support_count,
            confidence: ratio_to_f64(m.confidence()),
            utility: m.utility,
        };
        serde_json::to_writer(&mut out, &record)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<RuleRecord>> {
    let mut out = Vec::new();
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
            file: "rules",
            line: k + 1,
            msg: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}

/// Reads a rule file and re-derives every measure exactly from `db`; the
/// numbers stored in the file are informational only.
pub fn read_rules<R: BufRead>(input: R, db: &SequenceDatabase) -> Result<RhusrSet> {
    let stats = compute_item_stats(db);
    let records = read_records(input)?;
    let mut rules = Vec::with_capacity(records.len());
    for rec in records {
        let x: Vec<&str> = rec.antecedent.iter().map(String::as_str).collect();
        let y: Vec<&str> = rec.consequent.iter().map(String::as_str).collect();
        let rule = SequentialRule::from_names(db.profits(), &x, &y)?;
        let m = measures(&rule, db, &stats);
        rules.push((rule, m));
    }
    Ok(RhusrSet::from_unsorted(rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::miner::{mine, MiningParams};

    #[test]
    fn write_and_read_back() {
        let db = fixtures::running_example_su16();
        let rules = mine(&db, &MiningParams::new(41, 0.7, 0.25, 1.0)).unwrap();
        let mut buf = Vec::new();
        write_rules(&rules, &db, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"antecedent":["a","b","c"],"consequent":["g"],"support":0.75,"support_count":3,"confidence":1.0,"utility":57}"#
        );
        assert_eq!(read_rules(buf.as_slice(), &db).unwrap(), rules);
    }

    #[test]
    fn unknown_item_in_rule_file() {
        let db = fixtures::running_example();
        let line = r#"{"antecedent":["zz"],"consequent":["g"],"support":0.5,"support_count":2,"confidence":1.0,"utility":3}"#;
        assert!(matches!(
            read_rules(line.as_bytes(), &db),
            Err(Error::UnknownItem(_))
        ));
        assert!(matches!(
            read_rules("{not json".as_bytes(), &db),
            Err(Error::Parse { .. })
        ));
    }
}
