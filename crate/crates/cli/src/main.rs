use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use cremona_core::analysis::{
    analyze, mayr_ritscher_bound, mayr_ritscher_expression, monomial_birationality_oracle, power_betti,
    AnalysisConfig, AnalysisReport,
};
use cremona_core::biratio::{inverse_from_dual, jacobian_dual, verdict, verify_inverse};
use cremona_core::corpus::{corpus, lookup};
use cremona_core::groebner::{krull_dimension, DEFAULT_MAX_PAIRS};
use cremona_core::mapfile::MapFile;
use cremona_core::rees::{rees_ideal, RationalMap, ReductionSearch};
use cremona_core::{Error, FieldSpec};

/// Birationality, inverse maps, Rees algebras and degree bounds of rational maps.
///
/// INPUT is a path to a JSON map file or `corpus:NAME`.
#[derive(Parser)]
#[command(name = "cremona", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Largest power r for Reg(I^r).
    #[arg(long = "r_max", alias = "r-max", default_value_t = 3, global = true)]
    r_max: u32,
    /// Random trials in the reduction number search.
    #[arg(long, default_value_t = 3, global = true)]
    trials: usize,
    /// S-pair budget of each Groebner basis computation.
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS, global = true)]
    budget: u64,
    /// Seed of the reduction number search.
    #[arg(long, default_value_t = ReductionSearch::default().seed, global = true)]
    seed: u64,
    /// Inputs analyzed concurrently.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Coefficient field replacing the one in the input, `Q` or `Fp:p`.
    #[arg(long = "field-override", global = true)]
    field_override: Option<FieldSpec>,
    /// Assert that plane maps have at least three proper non-aligned base points.
    #[arg(long = "assume-three-proper-nonaligned", global = true)]
    assume_three_proper_nonaligned: bool,
    /// Skip the randomized reduction number search.
    #[arg(long = "no-reduction", global = true)]
    no_reduction: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full report: Rees ideal, criterion, inverse, invariants and bound ledger.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Compare corpus inputs against their pinned values; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Jacobian dual rank and inverse representative.
    Inverse { input: String },
    /// Minimal generators of the Rees ideal with bidegrees.
    Rees { input: String },
    /// Graded Betti numbers of A/I^r.
    Betti {
        input: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// The bound ledger.
    Bounds { input: String },
    /// Lattice criterion for monomial maps.
    Oracle { input: String },
    /// Names of the built-in maps, or the map file of one of them.
    Corpus { name: Option<String> },
}

fn load(input: &str, opts: &Opts) -> Result<(String, RationalMap), Error> {
    let (name, file) = match input.strip_prefix("corpus:") {
        Some(n) => (n.to_string(), lookup(n)?.map),
        None => (input.to_string(), MapFile::load(&PathBuf::from(input))?),
    };
    let map = match opts.field_override {
        Some(field) => file.to_map_over(field)?,
        None => file.to_map()?,
    };
    Ok((name, RationalMap::with_max_pairs(map.ring(), map.source().gens().to_vec(), map.forms().to_vec(), opts.budget)?))
}

fn config(opts: &Opts) -> AnalysisConfig {
    AnalysisConfig {
        r_max: opts.r_max,
        reduction: !opts.no_reduction,
        search: ReductionSearch { trials: opts.trials, seed: opts.seed, ..ReductionSearch::default() },
        max_pairs: opts.budget,
        assume_three_proper_nonaligned: opts.assume_three_proper_nonaligned,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cmd_analyze(inputs: &[String], check: bool, opts: &Opts) -> Result<Value, Error> {
    let cfg = config(opts);
    let run = |input: &String| -> Result<(String, AnalysisReport), Error> {
        let (name, f) = load(input, opts)?;
        Ok((name, analyze(&f, &cfg)?))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<Result<(String, AnalysisReport), Error>> = pool.install(|| inputs.par_iter().map(run).collect());
    let mut reports = Vec::with_capacity(results.len());
    let mut mismatches = Vec::new();
    for (input, res) in inputs.iter().zip(results) {
        let (_, rep) = res?;
        if check && input.starts_with("corpus:") && opts.field_override.is_none() {
            mismatches.extend(lookup(&input["corpus:".len()..])?.check(&rep));
        }
        reports.push(to_value(&rep));
    }
    if !mismatches.is_empty() {
        return Err(Error::Internal(format!("corpus mismatch: {}", mismatches.join("; "))));
    }
    Ok(if reports.len() == 1 { reports.pop().unwrap() } else { Value::Array(reports) })
}

fn cmd_inverse(input: &str, opts: &Opts) -> Result<Value, Error> {
    let (_, f) = load(input, opts)?;
    let jd = match jacobian_dual(&f) {
        Ok(jd) => jd,
        Err(Error::EmptyLinearPart) => {
            return Ok(json!({"birational": false, "rank": 0, "n": f.n(), "inverse": null}));
        }
        Err(e) => return Err(e),
    };
    let v = verdict(&jd)?;
    let inverse = if v.birational {
        let inv = inverse_from_dual(&jd)?;
        let verified = verify_inverse(&f, &inv.forms)?;
        json!({
            "forms": inv.forms.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "degree": inv.degree,
            "upper_estimate": inv.upper_estimate(),
            "content_removed": inv.content_removed,
            "rows": inv.rows,
            "verified": verified,
        })
    } else {
        Value::Null
    };
    Ok(json!({"birational": v.birational, "rank": v.rank, "n": v.n, "inverse": inverse}))
}

fn cmd_rees(input: &str, opts: &Opts) -> Result<Value, Error> {
    let (_, f) = load(input, opts)?;
    Ok(to_value(&rees_ideal(&f)?.to_json()))
}

fn cmd_betti(input: &str, power: u32, opts: &Opts) -> Result<Value, Error> {
    if power == 0 {
        return Err(Error::Input("--power must be at least 1".into()));
    }
    let (_, f) = load(input, opts)?;
    let table = power_betti(&f, power)?;
    let reg = table.ideal_regularity().unwrap_or(0);
    let delta = (power * f.delta()) as i64;
    Ok(json!({
        "power": power,
        "regularity": reg,
        "linear": reg == delta,
        "projective_dimension": table.projective_dimension(),
        "table": to_value(&table.to_json()),
        "display": table.to_string(),
    }))
}

fn cmd_bounds(input: &str, opts: &Opts) -> Result<Value, Error> {
    let (_, f) = load(input, opts)?;
    let rep = analyze(&f, &AnalysisConfig { reduction: false, ..config(opts) })?;
    let (n, m, d) = (f.n() as u64, f.m() as u64, f.delta() as u64);
    let d0 = f.source().gens().iter().map(|g| g.total_degree() as u64).max().unwrap_or(0);
    let dim_x = if f.source_is_projective_space() { n } else { krull_dimension(f.source())?.saturating_sub(1) as u64 };
    let mr = mayr_ritscher_bound(n, m, dim_x, d, d0);
    Ok(json!({
        "mayr_ritscher": {"expression": mayr_ritscher_expression(n, m, dim_x, d, d0), "digits": mr.digits(), "delta": mr.delta},
        "ledger": to_value(&rep.ledger),
    }))
}

fn cmd_oracle(input: &str, opts: &Opts) -> Result<Value, Error> {
    let (_, f) = load(input, opts)?;
    Ok(json!({"birational": monomial_birationality_oracle(&f)?}))
}

fn cmd_corpus(name: Option<&str>) -> Result<Value, Error> {
    Ok(match name {
        Some(n) => to_value(&lookup(n)?.map),
        None => Value::Array(corpus().iter().map(|e| json!({"name": e.name, "description": e.description})).collect()),
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Io(_)
        | Error::Input(_)
        | Error::Syntax { .. }
        | Error::UnknownVariable(_)
        | Error::InvalidField(_)
        | Error::InvalidRing(_)
        | Error::InvalidDescriptor(_)
        | Error::NotHomogeneous => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    let res = match &cli.cmd {
        Cmd::Analyze { inputs, check } => cmd_analyze(inputs, *check, o),
        Cmd::Inverse { input } => cmd_inverse(input, o),
        Cmd::Rees { input } => cmd_rees(input, o),
        Cmd::Betti { input, power } => cmd_betti(input, *power, o),
        Cmd::Bounds { input } => cmd_bounds(input, o),
        Cmd::Oracle { input } => cmd_oracle(input, o),
        Cmd::Corpus { name } => cmd_corpus(name.as_deref()),
    };
    match res {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("json");
            // A closed pipe on stdout is not an error of the analysis.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cremona: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
