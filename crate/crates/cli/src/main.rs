//! `qfock`: command-line access to straightening, the bar involution and
//! decomposition matrices of higher-level q-Fock spaces.
//!
//! Exit codes: 0 on success, 1 for engine errors, 2 for invalid flags and 3
//! when `check-theorems` finds a mismatch.

mod cache;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qfock::canonical::{decompose, BlockCache, DecompMatrix, Sign};
use qfock::combinatorics::{minimal_truncation, render_abacus};
use qfock::fock::{bar_vector, choose_truncation, FockVector};
use qfock::theorems::{
    check_theorem_a_with, check_theorem_b_with, run_campaign, CampaignConfig, Theorem,
    TheoremReport, Truncation,
};
use qfock::{encode, normal_order, BlockSpec, LaurentPoly, MultiPartition};
use serde_json::{json, Value};

use crate::cache::DiskCache;
use crate::input::{usage, UsageError};

#[derive(Parser)]
#[command(name = "qfock", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for work spread over rows or cases.
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,

    /// Cache directory for decomposition matrices [default: $QFOCK_CACHE_DIR,
    /// then the user cache directory].
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a wedge `u_{k_1} ∧ ... ∧ u_{k_t}`.
    Straighten {
        #[command(flatten)]
        amb: AmbientArgs,
        /// Comma-separated indices, e.g. "6,3,-2,4".
        #[arg(long, allow_hyphen_values = true)]
        indices: String,
    },
    /// The bar involution applied to one standard basis vector.
    Bar {
        #[command(flatten)]
        amb: AmbientArgs,
        #[command(flatten)]
        charge: ChargeArg,
        #[command(flatten)]
        lambda: PartitionArg,
        /// Truncation r, a multiple of nℓ [default: chosen from the block].
        #[arg(long)]
        r: Option<usize>,
    },
    /// One canonical basis vector: the row of the decomposition matrix for a
    /// multipartition.
    Canon {
        #[command(flatten)]
        amb: AmbientArgs,
        #[command(flatten)]
        charge: ChargeArg,
        #[command(flatten)]
        lambda: PartitionArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        /// Truncation r, a multiple of nℓ [default: chosen from the block].
        #[arg(long)]
        r: Option<usize>,
    },
    /// The full decomposition matrix of a block.
    Decomp {
        #[command(flatten)]
        amb: AmbientArgs,
        #[command(flatten)]
        charge: ChargeArg,
        /// Total size N of the multipartitions.
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Truncation r, a multiple of nℓ [default: chosen from the block].
        #[arg(long)]
        r: Option<usize>,
    },
    /// Compare level-ℓ and level-(ℓ-1) decomposition numbers for one case, or
    /// for a random campaign with `--cases`.
    CheckTheorems(CheckArgs),
    /// Text rendering of the abacus of `|λ; s⟩`.
    Abacus {
        #[command(flatten)]
        amb: AmbientArgs,
        #[command(flatten)]
        charge: ChargeArg,
        #[command(flatten)]
        lambda: PartitionArg,
        /// Truncation r, a multiple of nℓ [default: chosen from the block].
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Args)]
struct AmbientArgs {
    /// Number of residues n (at least 2).
    #[arg(long)]
    n: usize,
    /// Level ℓ.
    #[arg(long)]
    level: usize,
}

#[derive(Args)]
struct ChargeArg {
    /// Comma-separated multicharge, e.g. "3,-3".
    #[arg(long, allow_hyphen_values = true)]
    charge: String,
}

#[derive(Args)]
struct PartitionArg {
    /// Multipartition as JSON, e.g. "[[],[6]]".
    #[arg(long)]
    partition: String,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    #[arg(long, required_unless_present = "cases")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "cases")]
    level: Option<usize>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "cases")]
    charge: Option<String>,
    #[arg(long, required_unless_present = "cases")]
    size: Option<usize>,
    /// The omitted component, 1-based.
    #[arg(long, required_unless_present = "cases")]
    j: Option<usize>,
    #[arg(long, value_enum, required_unless_present = "cases")]
    sign: Option<SignArg>,
    /// Recorded in the report; with `--cases`, seeds the case sampler.
    #[arg(long)]
    seed: Option<u64>,
    /// Run this many randomly sampled qualifying cases instead of one.
    #[arg(long, conflicts_with_all = ["n", "level", "charge", "size", "j", "sign"])]
    cases: Option<usize>,
    /// Truncation for the level-ℓ block (single case only).
    #[arg(long, conflicts_with = "cases")]
    r: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

/// What a successful run reports back to `main`.
enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(3),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(k) = cli.jobs {
        if k == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("starting the worker pool")?;
    }
    let disk = if cli.no_cache {
        DiskCache::new(None)
    } else {
        DiskCache::new(cli.cache_dir.clone().or_else(DiskCache::default_dir))
    };
    match cli.command {
        Command::Straighten { amb, indices } => {
            let a = input::ambient(amb.n, amb.level)?;
            let word = input::int_list("indices", &indices)?;
            let e = normal_order([(word, LaurentPoly::one())], &a);
            print_json(&e.to_json())?;
        }
        Command::Bar {
            amb,
            charge,
            lambda,
            r,
        } => {
            let (spec, lam) = block_of(&amb, &charge, &lambda)?;
            let r = truncation(&spec, r)?;
            let v = FockVector::basis(&spec, &lam, r).map_err(|e| usage(e.to_string()))?;
            print_json(&bar_vector(&v)?.to_json()?)?;
        }
        Command::Canon {
            amb,
            charge,
            lambda,
            sign,
            r,
        } => {
            let (spec, lam) = block_of(&amb, &charge, &lambda)?;
            let r = truncation(&spec, r)?;
            let m = decomposition(&disk, &spec, sign.into(), r)?;
            let row = m
                .row(&lam)
                .context("multipartition missing from its block")?;
            let entries: Vec<Value> = row
                .iter()
                .map(|(mu, c)| json!({ "multipartition": mu, "coeff": c.to_json() }))
                .collect();
            print_json(&json!({
                "block": { "n": spec.n, "level": spec.level(), "charge": spec.charge, "size": spec.size },
                "sign": m.sign,
                "lambda": lam,
                "terms": entries,
            }))?;
        }
        Command::Decomp {
            amb,
            charge,
            size,
            sign,
            format,
            r,
        } => {
            input::ambient(amb.n, amb.level)?;
            let s = input::charge(&charge.charge, amb.level)?;
            let spec = input::block(amb.n, s, size)?;
            let r = truncation(&spec, r)?;
            let m = decomposition(&disk, &spec, sign.into(), r)?;
            match format {
                Format::Json => print_json(&m.to_json())?,
                Format::Csv => print_text(&m.to_csv())?,
                Format::Latex => print_text(&m.to_latex())?,
            }
        }
        Command::CheckTheorems(args) => return check_theorems(args),
        Command::Abacus {
            amb,
            charge,
            lambda,
            r,
        } => {
            let (spec, lam) = block_of(&amb, &charge, &lambda)?;
            let r = match r {
                Some(r) => r,
                None => minimal_truncation(&lam, &spec.charge, spec.n)?,
            };
            let w = encode(&lam, &spec.charge, spec.n, r).map_err(|e| usage(e.to_string()))?;
            print_text(&render_abacus(&w, spec.n, spec.level())?)?;
        }
    }
    Ok(Outcome::Ok)
}

fn block_of(
    amb: &AmbientArgs,
    charge: &ChargeArg,
    lambda: &PartitionArg,
) -> Result<(BlockSpec, MultiPartition)> {
    input::ambient(amb.n, amb.level)?;
    let s = input::charge(&charge.charge, amb.level)?;
    let lam = input::partition(&lambda.partition, amb.level)?;
    let spec = input::block(amb.n, s, lam.size())?;
    Ok((spec, lam))
}

fn truncation(spec: &BlockSpec, r: Option<usize>) -> Result<usize> {
    match r {
        Some(0) => Err(usage("--r must be positive")),
        Some(r) => Ok(r),
        None => Ok(choose_truncation(spec)?.r),
    }
}

fn decomposition(disk: &DiskCache, spec: &BlockSpec, sign: Sign, r: usize) -> Result<DecompMatrix> {
    if let Some(m) = disk.load(spec, r, sign) {
        return Ok(m);
    }
    let barm = BlockCache::new()
        .bar_matrix(spec, Some(r))
        .map_err(|e| match e {
            qfock::Error::Truncation { .. } => usage(e.to_string()),
            e => e.into(),
        })?;
    let m = decompose(&barm, sign)?;
    disk.store(&m, r)?;
    Ok(m)
}

fn check_theorems(args: CheckArgs) -> Result<Outcome> {
    let theorem = match args.theorem {
        TheoremArg::A => Theorem::A,
        TheoremArg::B => Theorem::B,
    };
    let reports = if let Some(count) = args.cases {
        let seed = args.seed.unwrap_or(0);
        run_campaign(theorem, count, seed, &CampaignConfig::default())?
    } else {
        // clap enforces presence of every case flag when --cases is absent.
        let (n, level) = (args.n.unwrap(), args.level.unwrap());
        input::ambient(n, level)?;
        let s = input::charge(args.charge.as_deref().unwrap(), level)?;
        let spec = input::block(n, s, args.size.unwrap())?;
        let j = input::component(args.j.unwrap(), level)?;
        if level < 2 {
            return Err(usage("check-theorems needs --level 2 or more"));
        }
        let trunc = match args.r {
            Some(r) => Truncation::Fixed(truncation(&spec, Some(r))?),
            None => Truncation::Default,
        };
        let sign = args.sign.unwrap().into();
        let cache = BlockCache::new();
        let mut report = match theorem {
            Theorem::A => check_theorem_a_with(&spec, j, sign, trunc, &cache)?,
            Theorem::B => check_theorem_b_with(&spec, j, sign, trunc, &cache)?,
        };
        report.seed = args.seed;
        vec![report]
    };
    let passed = reports.iter().all(TheoremReport::passed);
    let values = reports
        .iter()
        .map(report_json)
        .collect::<Result<Vec<_>>>()?;
    let out = if args.cases.is_some() {
        json!({ "passed": passed, "reports": values })
    } else {
        values.into_iter().next().expect("one report")
    };
    print_json(&out)?;
    Ok(if passed {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    })
}

/// The report without its wall-clock time, so that repeated runs print the
/// same bytes.
fn report_json(r: &TheoremReport) -> Result<Value> {
    let mut v = serde_json::to_value(r)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsed");
        obj.insert("passed".into(), Value::Bool(r.passed()));
    }
    Ok(v)
}

fn print_json(v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    print_text(&text)
}

fn print_text(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}
