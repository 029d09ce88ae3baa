//! Generates a seeded synthetic database, writes it in the text formats and
//! reads it back.
//!
//! cargo run --example generate_synthetic [-- ITEMS SEQUENCES SEED]

use rhusr::seqdb::{compute_item_stats, parse_database, write_database, write_profits};
use rhusr::synth::{generate, SynthConfig};

fn main() -> rhusr::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("numeric argument"));
    let items = args.next().unwrap_or(20) as usize;
    let sequences = args.next().unwrap_or(100) as usize;
    let seed = args.next().unwrap_or(1);

    let db = generate(&SynthConfig::new(items, sequences, seed))?;
    let (mut text, mut profits) = (Vec::new(), Vec::new());
    write_database(&db, &mut text)?;
    write_profits(db.profits(), &mut profits)?;
    let back = parse_database(text.as_slice(), profits.as_slice())?;
    assert_eq!(back, db);

    println!(
        "{} sequences, {} items used, total utility {}",
        db.len(),
        db.alphabet().len(),
        db.total_utility()
    );
    let stats = compute_item_stats(&db);
    let mut top: Vec<_> = stats.values().collect();
    top.sort_by_key(|s| std::cmp::Reverse(s.support_count));
    for s in top.iter().take(5) {
        println!(
            "  {:<5} support={:<4} seu={}",
            db.profits().name(s.item),
            s.support_count,
            s.seu
        );
    }
    print!(
        "{}",
        String::from_utf8_lossy(&text)
            .lines()
            .take(3)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
