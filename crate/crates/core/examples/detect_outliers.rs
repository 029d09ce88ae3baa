//! Scores each running-example sequence by the rare rules it contains.
//!
//! cargo run --example detect_outliers

use num_rational::Ratio;
use rhusr::fixtures;
use rhusr::miner::{mine, MiningParams};
use rhusr::outlier::{detect, render_decimal, write_tsv, OutlierParams, REPORT_LABEL};

fn main() -> rhusr::Result<()> {
    let db = fixtures::running_example_su16();
    let params = MiningParams::new(41, 0.7, 0.25, 1.0);
    let rules = mine(&db, &params)?;

    let report = detect(
        &db,
        &rules,
        &OutlierParams::new(Ratio::new(7, 10))?,
        params.maxsup,
    )?;
    for (rule, df) in &report.deviations {
        println!(
            "DF({}) = {} ~ {}",
            rule.display(db.profits()),
            df,
            render_decimal(df, 4)
        );
    }
    write_tsv(&report, std::io::stdout().lock())?;
    let flagged: Vec<_> = report
        .outliers()
        .map(|s| format!("S{}", s.sid + 1))
        .collect();
    println!("{REPORT_LABEL}: {}", flagged.join(", "));

    // Without the contains-a-rule guard, S3 (no rules, OF = 1) is flagged too.
    let literal = OutlierParams::new(Ratio::new(7, 10))?.literal();
    let report = detect(&db, &rules, &literal, params.maxsup)?;
    println!(
        "literal mode flags {} of {} sequences",
        report.outliers().count(),
        db.len()
    );
    Ok(())
}
