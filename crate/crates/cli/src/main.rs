//! Command-line front end: factor blocks, run surveys and checks, build
//! witnesses and scan numerical monoids. Reports go to stdout or, with
//! `--out`, to a file replaced atomically.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when a resource ceiling
//! was hit (including surveys that had to skip blocks).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zerosum::cache::{cache_load_or_build, CACHE_DIR_ENV};
use zerosum::checkpoint::{checkpoint_group, resume_survey_with_table, survey_checkpointed_with_table, SurveyProgress};
use zerosum::fsutil::write_atomic;
use zerosum::metrics::{catenary_degree_with, catenary_sup_with_table};
use zerosum::report::{
    nm_scan_csv, nm_scan_summary, survey_csv, survey_json, survey_text, FactorRecord, NmRecord, WitnessRecord,
};
use zerosum::survey::{
    check_gap_factorizations, check_max_gap_isolated, default_max_len, survey_with_runner, ShardRunner,
};
use zerosum::{
    AtomTable, Block, CyclicGroup, Error, Factorizer, Limits, NumericalMonoid64, SurveyConfig, SurveyReport,
};

#[derive(Parser)]
#[command(name = "zerosum", version, about = "Factorization invariants of zero-sum sequences over Z_n")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Directory holding cached atom tables.
    #[arg(long, global = true, env = CACHE_DIR_ENV, default_value = ".zerosum-cache")]
    cache_dir: PathBuf,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_factorizations: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_graph_vertices: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_atoms: Option<u64>,
}

impl Common {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            max_factorizations: self.max_factorizations.map_or(d.max_factorizations, |v| v as usize),
            max_graph_vertices: self.max_graph_vertices.map_or(d.max_graph_vertices, |v| v as usize),
            max_atoms: self.max_atoms.map_or(d.max_atoms, |v| v as usize),
        }
    }

    fn table(&self, group: CyclicGroup) -> zerosum::Result<Arc<AtomTable>> {
        let (table, outcome) = cache_load_or_build(group, &self.cache_dir)?;
        log::info!("atom table for n = {}: {} atoms ({outcome:?})", group.order(), table.len());
        Ok(Arc::new(table))
    }

    fn emit(&self, text: &str) -> zerosum::Result<()> {
        match &self.out {
            Some(path) => write_atomic(path, text.as_bytes()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the atoms of B(Z_n) and write the cache file.
    Atoms {
        #[arg(long)]
        n: u64,
    },
    /// Lengths, delta set and factorization count of one block.
    Factor {
        #[arg(long)]
        n: u64,
        /// Canonical text, e.g. "1^8 2 4^5".
        #[arg(long)]
        block: String,
        /// Also compute the catenary degree.
        #[arg(long)]
        catenary: bool,
    },
    /// Classify every nonempty subset of {1, …, n−2} as a delta set.
    Survey(SurveyArgs),
    /// Check that a gap of n−2 only occurs in Δ(x) = {n−2}.
    #[command(name = "check-thm32")]
    CheckThm32(ScanArgs),
    /// Check the shape of factorizations on either side of a gap of n−2.
    #[command(name = "check-lemma31")]
    CheckLemma31(ScanArgs),
    /// Largest catenary degree over all blocks up to a length bound.
    Catenary(ScanArgs),
    /// Build a block whose delta set has at least m elements.
    Witness {
        m: u64,
        #[arg(long)]
        b0: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        /// Factor the block and compare with the predicted length set.
        #[arg(long)]
        verify: bool,
    },
    /// Length and delta set of one element of a numerical monoid.
    Nm {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        elt: u64,
    },
    /// Delta sets of all elements up to a bound (CSV), plus a JSON summary.
    NmScan {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        up_to: u64,
        /// Write the summary JSON here instead of stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    n: u64,
    /// Bound on |x| (default 2n + 4).
    #[arg(long)]
    max_len: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct SurveyArgs {
    /// Group order; read from the checkpoint with --resume.
    #[arg(long, required_unless_present = "resume")]
    n: Option<u64>,
    /// Bound on |x| (default 2n + 4).
    #[arg(long)]
    max_len: Option<u64>,
    /// Restrict to blocks over these residues, e.g. "1,2,4".
    #[arg(long, value_delimiter = ',')]
    support: Option<Vec<u64>>,
    /// Enumerate one block per orbit of the unit group.
    #[arg(long)]
    quotient: bool,
    /// Save progress here and pick it up on the next run.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue the survey stored in the checkpoint with its own settings.
    #[arg(long, requires = "checkpoint", conflicts_with_all = ["n", "max_len", "support", "quotient"])]
    resume: bool,
    /// Stop after this many shards (checkpointed runs only).
    #[arg(long, requires = "checkpoint")]
    max_shards: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Input(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn group(n: u64) -> Result<CyclicGroup, Failure> {
    Ok(CyclicGroup::new(n)?)
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("report serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Outcome {
    let common = &cli.common;
    let limits = common.limits();
    match cli.command {
        Command::Atoms { n } => {
            let table = common.table(group(n)?)?;
            let mut text = String::new();
            for a in table.atoms() {
                text.push_str(&a.to_text());
                text.push('\n');
            }
            common.emit(&text)?;
        }
        Command::Factor { n, block, catenary } => {
            let x = Block::parse(group(n)?, &block)?;
            let mut engine = Factorizer::for_block(&x, limits)?;
            let lengths = engine.length_set(&x)?;
            let zs = engine.factorizations(&x)?;
            let catenary = if catenary { Some(catenary_degree_with(&x, &mut engine)?) } else { None };
            let rec = FactorRecord {
                n,
                delta: lengths.delta(),
                lengths,
                num_factorizations: zs.len() as u64,
                catenary,
                block: x,
            };
            common.emit(&json_line(&rec))?;
        }
        Command::Survey(args) => return survey(common, limits, args),
        Command::CheckThm32(args) => {
            let config = SurveyConfig::new(group(args.n)?, args.max_len.unwrap_or(default_max_len(args.n)))?;
            let out = check_max_gap_isolated(&config, limits)?;
            let violations: Vec<_> =
                out.violations.iter().map(|(b, d)| json!({ "block": b.to_text(), "delta": d })).collect();
            let doc = json!({
                "n": args.n,
                "max_len": config.max_len,
                "blocks_checked": out.blocks_checked,
                "passed": out.passed(),
                "violations": violations,
                "skipped": out.skipped.iter().map(Block::to_text).collect::<Vec<_>>(),
            });
            common.emit(&json_line(&doc))?;
            incomplete(out.skipped.len())?;
        }
        Command::CheckLemma31(args) => {
            let max_len = args.max_len.unwrap_or(default_max_len(args.n));
            let out = check_gap_factorizations(group(args.n)?, max_len, limits)?;
            let violations: Vec<_> = out
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "block": v.block.to_text(),
                        "factorization": v.factorization.to_string(),
                        "generator": v.generator,
                    })
                })
                .collect();
            let doc = json!({
                "n": args.n,
                "max_len": max_len,
                "blocks_checked": out.blocks_checked,
                "passed": out.passed(),
                "violations": violations,
                "skipped": out.skipped.iter().map(Block::to_text).collect::<Vec<_>>(),
            });
            common.emit(&json_line(&doc))?;
            incomplete(out.skipped.len())?;
        }
        Command::Catenary(args) => {
            let table = common.table(group(args.n)?)?;
            let max_len = args.max_len.unwrap_or(default_max_len(args.n));
            let scan = catenary_sup_with_table(table, max_len, limits)?;
            common.emit(&json_line(&scan))?;
        }
        Command::Witness { m, b0, n, verify } => {
            let w = zerosum::build_witness(m, b0, n)?;
            let (actual_lengths, verified) = if verify {
                let actual = w.actual_length_set(limits)?;
                let ok = actual == w.predicted_length_set();
                (Some(actual), Some(ok))
            } else {
                (None, None)
            };
            let rec = WitnessRecord {
                predicted_lengths: w.predicted_length_set(),
                predicted_delta: w.predicted_delta(),
                actual_lengths,
                verified,
                witness: w,
            };
            common.emit(&json_line(&rec))?;
            if verified == Some(false) {
                return Err(Failure::Input("factored length set differs from the prediction".into()));
            }
        }
        Command::Nm { gens, elt } => {
            let monoid = NumericalMonoid64::new(gens)?;
            let rec = NmRecord {
                gens: monoid.generators().to_vec(),
                elt,
                lengths: monoid.length_set(elt),
                delta: monoid.delta_set(elt),
            };
            common.emit(&json_line(&rec))?;
        }
        Command::NmScan { gens, up_to, summary } => {
            let monoid = NumericalMonoid64::new(gens)?;
            let scan = monoid.scan(up_to)?;
            common.emit(&nm_scan_csv(&scan))?;
            let mut doc = nm_scan_summary(&scan);
            doc.push('\n');
            match summary {
                Some(path) => write_atomic(&path, doc.as_bytes())?,
                None => eprint!("{doc}"),
            }
        }
    }
    Ok(())
}

fn incomplete(skipped: usize) -> Outcome {
    if skipped > 0 {
        return Err(Failure::Limit(format!("{skipped} blocks skipped on resource limits; result incomplete")));
    }
    Ok(())
}

fn survey(common: &Common, limits: Limits, args: SurveyArgs) -> Outcome {
    let report = match (&args.checkpoint, args.resume) {
        (Some(path), true) => {
            let table = common.table(checkpoint_group(path)?)?;
            finished(path, resume_survey_with_table(path, args.max_shards, Some(table))?)?
        }
        (path, _) => {
            let n = args.n.expect("clap requires --n without --resume");
            let mut config = SurveyConfig::new(group(n)?, args.max_len.unwrap_or(default_max_len(n)))?
                .quotient_by_units(args.quotient);
            if let Some(s) = &args.support {
                config = config.with_support(s.iter().copied())?;
            }
            let table = common.table(config.group)?;
            match path {
                Some(path) => finished(
                    path,
                    survey_checkpointed_with_table(&config, limits, path, args.max_shards, Some(table))?,
                )?,
                None => Some(survey_with_runner(&ShardRunner::with_table(&config, limits, table)?)?),
            }
        }
    };
    let report = match report {
        Some(r) => r,
        None => return Ok(()),
    };
    let text = match args.format {
        Format::Json => survey_json(&report),
        Format::Csv => survey_csv(&report),
        Format::Text => survey_text(&report),
    };
    common.emit(&text)?;
    incomplete(report.skipped.len())
}

fn finished(path: &Path, progress: SurveyProgress) -> Result<Option<SurveyReport>, Failure> {
    match progress {
        SurveyProgress::Finished(r) => Ok(Some(*r)),
        SurveyProgress::Interrupted { next_shard, total_shards } => {
            eprintln!("{}: {next_shard}/{total_shards} shards done; rerun to continue", path.display());
            Ok(None)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
