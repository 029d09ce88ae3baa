//! Command-line surface behind the `rhusr` binary.
//!
//! Exit codes: 0 on success, 1 for parse and I/O failures, 2 for invalid
//! parameters (including flags clap rejects).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use crate::bench::{sweep, write_csv};
use crate::error::{Error, Result};
use crate::io::{read_rules, write_rules};
use crate::miner::{
    mine_with_telemetry, parse_fraction, MiningParams, RhusrSet, Strategies, Threshold,
};
use crate::oracle::oracle_mine;
use crate::outlier::{detect, write_json, write_tsv, OutlierParams};
use crate::seqdb::{load_database, write_database, write_profits, SequenceDatabase, Utility};
use crate::synth::{generate, SynthConfig};

#[derive(Debug, Parser)]
#[command(
    name = "rhusr",
    version,
    about = "Rare high-utility sequential rules and rule-based outlier scoring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine rare high-utility sequential rules into a JSON-lines file.
    Mine(MineArgs),
    /// Same as `mine`, by exhaustive enumeration (alphabets of at most 16 items).
    Oracle(OracleArgs),
    /// Score sequences against a rule file.
    Detect(DetectArgs),
    /// Mine and detect in one pass.
    Run(RunArgs),
    /// Write a seeded synthetic database and profit table.
    Gen(GenArgs),
    /// Mine over a minutil sweep for each strategy profile; CSV out.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(long)]
    pub db: PathBuf,
    #[arg(long)]
    pub profits: PathBuf,
}

#[derive(Debug, Args)]
pub struct Thresholds {
    #[arg(long)]
    pub minutil: Utility,
    /// Fraction such as `0.7` or `7/10`.
    #[arg(long, value_parser = parse_fraction)]
    pub minconf: Ratio<u64>,
    /// Fraction of |SD| (`0.25`, `1/4`) or a sequence count (`2c`).
    #[arg(long)]
    pub minsup: Threshold,
    #[arg(long, default_value = "1")]
    pub maxsup: Threshold,
    /// Keep rules whose support equals maxsup.
    #[arg(long)]
    pub maxsup_inclusive: bool,
}

impl Thresholds {
    fn params(&self) -> MiningParams {
        let mut p = MiningParams::new(self.minutil, 0.0, self.minsup, self.maxsup)
            .with_maxsup_inclusive(self.maxsup_inclusive);
        p.minconf = self.minconf;
        p
    }
}

#[derive(Debug, Args)]
pub struct Engine {
    /// Turn off pruning strategy k (1..=7); repeatable.
    #[arg(long = "disable-strategy", value_name = "K", value_parser = clap::value_parser!(u8).range(1..=7))]
    pub disable: Vec<u8>,
    /// Worker threads; 1 is fully sequential, 0 uses all cores.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Append one JSON telemetry line to this file.
    #[arg(long)]
    pub telemetry: Option<PathBuf>,
}

impl Engine {
    fn apply(&self, mut params: MiningParams) -> MiningParams {
        let mut s = Strategies::all();
        for &k in &self.disable {
            s.set(k as usize, false);
        }
        params.strategies = s;
        params.threads = self.threads;
        params
    }
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub thresholds: Thresholds,
    #[command(flatten)]
    pub engine: Engine,
    /// Rule file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub thresholds: Thresholds,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Args)]
pub struct Scoring {
    /// Outlier threshold on OF, in [0, 1].
    #[arg(long, value_parser = parse_fraction)]
    pub v: Ratio<u64>,
    /// Also flag sequences that contain no rule.
    #[arg(long)]
    pub literal_alg1: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl Scoring {
    fn params(&self) -> Result<OutlierParams> {
        let p = OutlierParams::new(self.v)?;
        Ok(if self.literal_alg1 { p.literal() } else { p })
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long)]
    pub rules: PathBuf,
    /// maxsup used for deviation factors.
    #[arg(long, default_value = "1")]
    pub maxsup: Threshold,
    #[command(flatten)]
    pub scoring: Scoring,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub thresholds: Thresholds,
    #[command(flatten)]
    pub engine: Engine,
    #[command(flatten)]
    pub scoring: Scoring,
    /// Also write the mined rules here.
    #[arg(long)]
    pub rules_out: Option<PathBuf>,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub items: usize,
    #[arg(long)]
    pub seqs: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_itemsets: usize,
    #[arg(long, default_value_t = 3)]
    pub max_itemset_size: usize,
    /// Writes `<prefix>.db` and `<prefix>.profits`.
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Comma-separated minutil values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sweep: Vec<Utility>,
    #[arg(long, value_parser = parse_fraction, default_value = "0")]
    pub minconf: Ratio<u64>,
    #[arg(long, default_value = "0")]
    pub minsup: Threshold,
    #[arg(long, default_value = "1")]
    pub maxsup: Threshold,
    #[arg(long)]
    pub maxsup_inclusive: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Write 0 in the runtime and memory columns (reproducible output).
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParams(_) | Error::AlphabetTooLarge { .. } => 2,
        _ => 1,
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(inputs: &Inputs) -> Result<SequenceDatabase> {
    load_database(&inputs.db, &inputs.profits)
}

fn mine_rules(
    db: &SequenceDatabase,
    params: &MiningParams,
    telemetry: Option<&Path>,
) -> Result<RhusrSet> {
    let (rules, t) = mine_with_telemetry(db, params)?;
    if let Some(path) = telemetry {
        let mut f = File::options().create(true).append(true).open(path)?;
        serde_json::to_writer(&mut f, &t)?;
        writeln!(f)?;
    }
    Ok(rules)
}

fn report(
    db: &SequenceDatabase,
    rules: &RhusrSet,
    scoring: &Scoring,
    maxsup: Threshold,
    out: Option<&Path>,
) -> Result<()> {
    let rep = detect(db, rules, &scoring.params()?, maxsup)?;
    let mut w = output(out)?;
    match scoring.format {
        Format::Tsv => write_tsv(&rep, &mut w)?,
        Format::Json => write_json(&rep, db, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Mine(a) => {
            let params = a.engine.apply(a.thresholds.params());
            let db = load(&a.inputs)?;
            let rules = mine_rules(&db, &params, a.engine.telemetry.as_deref())?;
            let mut w = output(a.out.as_deref())?;
            write_rules(&rules, &db, &mut w)?;
            w.flush()?;
        }
        Command::Oracle(a) => {
            let db = load(&a.inputs)?;
            let rules = oracle_mine(&db, &a.thresholds.params())?;
            let mut w = output(a.out.as_deref())?;
            write_rules(&rules, &db, &mut w)?;
            w.flush()?;
        }
        Command::Detect(a) => {
            a.scoring.params()?;
            let db = load(&a.inputs)?;
            let rules = read_rules(BufReader::new(File::open(&a.rules)?), &db)?;
            report(&db, &rules, &a.scoring, a.maxsup, a.out.as_deref())?;
        }
        Command::Run(a) => {
            a.scoring.params()?;
            let params = a.engine.apply(a.thresholds.params());
            let db = load(&a.inputs)?;
            let rules = mine_rules(&db, &params, a.engine.telemetry.as_deref())?;
            if let Some(path) = &a.rules_out {
                let mut w = output(Some(path))?;
                write_rules(&rules, &db, &mut w)?;
                w.flush()?;
            }
            report(&db, &rules, &a.scoring, params.maxsup, a.out.as_deref())?;
        }
        Command::Gen(a) => {
            let cfg = SynthConfig {
                items: a.items,
                sequences: a.seqs,
                max_itemsets: a.max_itemsets,
                max_itemset_size: a.max_itemset_size,
                seed: a.seed,
            };
            let db = generate(&cfg)?;
            let prefix = a.out_prefix.to_string_lossy();
            let mut w = output(Some(Path::new(&format!("{prefix}.db"))))?;
            write_database(&db, &mut w)?;
            w.flush()?;
            let mut w = output(Some(Path::new(&format!("{prefix}.profits"))))?;
            write_profits(db.profits(), &mut w)?;
            w.flush()?;
        }
        Command::Bench(a) => {
            let mut base = MiningParams::new(0, 0.0, a.minsup, a.maxsup)
                .with_maxsup_inclusive(a.maxsup_inclusive)
                .with_threads(a.threads);
            base.minconf = a.minconf;
            let db = load(&a.inputs)?;
            base.normalize(db.len())?;
            let rows = sweep(&db, &base, &a.sweep)?;
            let mut w = output(a.out.as_deref())?;
            write_csv(&rows, !a.no_timing, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Parses `args`, runs, prints any error to stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mine_flags() {
        let cli = Cli::try_parse_from([
            "rhusr",
            "mine",
            "--db",
            "a.db",
            "--profits",
            "a.p",
            "--minutil",
            "41",
            "--minconf",
            "0.7",
            "--minsup",
            "0.25",
            "--maxsup",
            "1",
            "--disable-strategy",
            "3",
            "--disable-strategy",
            "6",
        ])
        .unwrap();
        let Command::Mine(a) = cli.command else {
            panic!()
        };
        let p = a.engine.apply(a.thresholds.params());
        assert_eq!(
            p.strategies.mask(),
            Strategies::all().without(3).without(6).mask()
        );
        assert_eq!(p.minconf, Ratio::new(7, 10));
        assert_eq!(p.minsup, Threshold::Fraction(Ratio::new(1, 4)));
    }

    #[test]
    fn bad_strategy_number_is_usage_error() {
        let code = main_with_args([
            "rhusr",
            "mine",
            "--db",
            "a",
            "--profits",
            "b",
            "--minutil",
            "1",
            "--minconf",
            "0",
            "--minsup",
            "0",
            "--disable-strategy",
            "8",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn count_threshold_form() {
        let cli = Cli::try_parse_from([
            "rhusr",
            "oracle",
            "--db",
            "a",
            "--profits",
            "b",
            "--minutil",
            "1",
            "--minconf",
            "1/2",
            "--minsup",
            "2c",
        ])
        .unwrap();
        let Command::Oracle(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.thresholds.minsup, Threshold::Count(2));
        assert_eq!(
            a.thresholds.maxsup,
            Threshold::Fraction(Ratio::from_integer(1))
        );
    }
}
