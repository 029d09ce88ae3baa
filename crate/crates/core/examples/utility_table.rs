//! Builds the utility table of `a => e` and grows it incrementally, checking
//! each step against a from-scratch rebuild.
//!
//! cargo run --example utility_table

use rhusr::fixtures;
use rhusr::miner::{build_utility_table, extend_utility_table, DbIndex, Side, UtilityTable};
use rhusr::SequentialRule;

fn show(t: &UtilityTable, db: &rhusr::SequenceDatabase) {
    println!(
        "{}  support={} u={} bound(all)={} bound(left)={}",
        t.rule.display(db.profits()),
        t.support_count(),
        t.utility(),
        t.bound_all(),
        t.bound_left()
    );
    println!("  sid iutil lutil rutil lrutil");
    for r in &t.rows {
        println!(
            "  S{}  {:>5} {:>5} {:>5} {:>6}",
            r.sid + 1,
            r.iutil,
            r.lutil,
            r.rutil,
            r.lrutil
        );
    }
}

fn main() -> rhusr::Result<()> {
    let db = fixtures::running_example();
    let index = DbIndex::new(&db);
    let id = |name: &str| db.profits().id(name).expect("item in fixture");

    let ae = build_utility_table(
        &SequentialRule::from_names(db.profits(), &["a"], &["e"])?,
        &db,
    )?;
    show(&ae, &db);

    let aeg = extend_utility_table(&ae, id("g"), Side::Right, &index);
    show(&aeg, &db);
    assert_eq!(aeg, build_utility_table(&aeg.rule, &db)?);

    let aceg = extend_utility_table(&aeg, id("c"), Side::Left, &index);
    show(&aceg, &db);
    assert_eq!(aceg, build_utility_table(&aceg.rule, &db)?);
    Ok(())
}
