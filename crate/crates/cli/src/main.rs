//! Command-line front end: bound evaluation, exact search, verification,
//! fragment censuses, shadow checks, extremal constructions, and grid sweeps,
//! with JSON/CSV reports and a content-addressed result cache.
//!
//! Exit codes: 0 ok/verified; 1 verification mismatch; 2 invalid parameters;
//! 3 infeasible instance; 4 budget exceeded.

mod grid;
mod reports;

use clap::{Args, Parser, Subcommand};
use crossl_core::binom::{binom_real, solve_binom_inverse};
use crossl_core::bounds::*;
use crossl_core::construct::*;
use crossl_core::error::Error as CoreError;
use crossl_core::family::SetFamily;
use crossl_core::fragments::fragment_report;
use crossl_core::graph::IntersectionGraph;
use crossl_core::lspec::LSpec;
use crossl_core::search::*;
use reports::*;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "crossl", version, about = "Exact bounds, searches, and verification for cross-L-intersecting families")]
struct Cli {
    /// Worker threads for sweeps (default: rayon's choice).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for the content-addressed result cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Run an exact search oracle.
    Search(SearchArgs),
    /// Compare oracle against formula (single point or sweep).
    Verify(VerifyArgs),
    /// Fragment census of the conflict graph.
    Fragments(FragmentsArgs),
    /// Shadow lower-bound check for a family file.
    Shadow(ShadowArgs),
    /// Emit an extremal construction as family files.
    Construct(ConstructArgs),
    /// Grid sweep emitting CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    mode: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long = "L")]
    l: Option<String>,
    /// First uniformity for the mixed-uniformity bound.
    #[arg(long)]
    a: Option<u32>,
    /// Second uniformity for the mixed-uniformity bound.
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    mode: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long = "L")]
    l: String,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Skip witness enumeration.
    #[arg(long)]
    no_witnesses: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    mode: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long = "L")]
    l: Option<String>,
    /// Grid sweep, e.g. "n=4..8,k=2..3,L=all".
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Skip the extremal-class comparison.
    #[arg(long)]
    no_witness_check: bool,
}

#[derive(Args)]
struct FragmentsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long = "L")]
    l: String,
    #[arg(long, default_value_t = 2)]
    size_cap: usize,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Args)]
struct ShadowArgs {
    /// Family file path.
    #[arg(long)]
    family: PathBuf,
    /// Shadow order.
    #[arg(long)]
    i: u32,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    which: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long = "L")]
    l: Option<String>,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Lower interval end for the r-cross construction.
    #[arg(long = "l-low")]
    l_low: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// Seed family file for the complement variants.
    #[arg(long)]
    seed_family: Option<PathBuf>,
    /// Output prefix; families land at PREFIX_1.json, PREFIX_2.json, ...
    #[arg(long)]
    prefix: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    mode: String,
    #[arg(long)]
    grid: String,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let (body, code) = dispatch(&cli);
    if let Some(path) = &cli.out {
        if let Err(e) = atomic_write(path, body.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INVALID);
        }
    }
    println!("{body}");
    ExitCode::from(code)
}

fn dispatch(cli: &Cli) -> (String, u8) {
    let key = cache_key(&std::env::args().skip(1).collect::<Vec<_>>());
    if let Some(dir) = &cli.cache_dir {
        if let Some(hit) = cache_read(dir, &key) {
            return hit;
        }
    }
    let result = run_command(cli);
    let (body, code) = match result {
        Ok(pair) => pair,
        Err(e) => (error_report(&e), exit_for(&e)),
    };
    if let Some(dir) = &cli.cache_dir {
        let _ = cache_write(dir, &key, &body, code);
    }
    (body, code)
}

fn run_command(cli: &Cli) -> Result<(String, u8), CoreError> {
    match &cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Fragments(args) => cmd_fragments(args),
        Command::Shadow(args) => cmd_shadow(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn exit_for(e: &CoreError) -> u8 {
    match e {
        CoreError::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

fn error_report(e: &CoreError) -> String {
    serde_json::to_string_pretty(&ErrorReport {
        error: e.to_string(),
    })
    .expect("error report serializes")
}

fn parse_l(text: &str, k: u32) -> Result<LSpec, CoreError> {
    LSpec::parse(text, k)
}

fn cmd_bound(args: &BoundArgs) -> Result<(String, u8), CoreError> {
    let report = match args.mode.as_str() {
        "cross2" => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            BoundReport::from_core(bound_cross2(args.n, args.k, &l)?)
        }
        "pairwise" => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            let r = args.r.ok_or_else(need_r)?;
            BoundReport::from_core(bound_pairwise_l(args.n, args.k, r, &l)?)
        }
        "rcross" => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            let r = args.r.ok_or_else(need_r)?;
            rcross_bound_report(args.n, args.k, r, &l)?
        }
        "ekr" => {
            let v = bound_ekr(args.n, args.k)?;
            BoundReport::simple("ekr", args.n, args.k, None, None, v.to_string(), false)
        }
        "product" => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            let rb = bound_deza_erdos_frankl(args.n, args.k, &l)?;
            let mut rep = BoundReport::simple(
                "product",
                args.n,
                args.k,
                None,
                Some(l.sizes()),
                format!("{}/{}", rb.numer, rb.denom),
                false,
            );
            if !rb.range_ok {
                rep.warnings.push("outside the stated validity range".into());
            }
            rep.rational = Some(rb);
            rep
        }
        "wang_zhang" => {
            let (a, b, t) = (
                args.a.ok_or_else(|| invalid("--a required"))?,
                args.b.ok_or_else(|| invalid("--b required"))?,
                args.t.ok_or_else(|| invalid("--t required"))?,
            );
            let (v, warnings) = bound_wang_zhang(args.n, a, b, t);
            let mut rep =
                BoundReport::simple("wang_zhang", args.n, a, None, None, v.to_string(), false);
            rep.b = Some(b);
            rep.t = Some(t);
            rep.warnings = warnings;
            rep
        }
        "pairwise_t" => {
            let (t, r) = (
                args.t.ok_or_else(|| invalid("--t required"))?,
                args.r.ok_or_else(need_r)?,
            );
            let (v, branch) = bound_pairwise_t(args.n, args.k, t, r)?;
            let mut rep = BoundReport::simple(
                "pairwise_t",
                args.n,
                args.k,
                Some(r),
                None,
                v.to_string(),
                false,
            );
            rep.t = Some(t);
            rep.branch = Some(format!("{branch:?}"));
            rep
        }
        "pairwise_cross" => {
            let r = args.r.ok_or_else(need_r)?;
            let (v, branch) = bound_pairwise_cross_intersecting(args.n, args.k, r)?;
            let mut rep = BoundReport::simple(
                "pairwise_cross",
                args.n,
                args.k,
                Some(r),
                None,
                v.to_string(),
                false,
            );
            rep.branch = Some(format!("{branch:?}"));
            rep
        }
        other => return Err(invalid(&format!("unknown bound mode {other:?}"))),
    };
    let code = if report.value == "INFEASIBLE" {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    Ok((serde_json::to_string_pretty(&report)?, code))
}

fn need_l() -> CoreError {
    invalid("--L required for this mode")
}

fn need_r() -> CoreError {
    invalid("--r required for this mode")
}

fn invalid(msg: &str) -> CoreError {
    CoreError::InvalidParams(msg.into())
}

/// r-cross bound dispatch: L = `[t,k]` uses the window-maximum form; a general
/// interval `[l, s-1]` uses the asymptotic form; anything else is open territory.
fn rcross_bound_report(n: u32, k: u32, r: u32, l: &LSpec) -> Result<BoundReport, CoreError> {
    match l.as_interval() {
        Some((t, hi)) if hi == k => {
            let (v, m) = bound_rcross_t(n, k, t, r)?;
            let mut rep =
                BoundReport::simple("rcross", n, k, Some(r), Some(l.sizes()), v.to_string(), false);
            rep.argmax_m = Some(m);
            Ok(rep)
        }
        Some((lo, hi)) => {
            let v = bound_rcross_interval(n, k, r, lo, hi + 1)?;
            Ok(BoundReport::simple(
                "rcross",
                n,
                k,
                Some(r),
                Some(l.sizes()),
                v.to_string(),
                true,
            ))
        }
        None => Err(CoreError::UnsupportedL(format!(
            "no proven r-cross bound for non-interval L={l} (open problem)"
        ))),
    }
}

fn search_opts(budget: u64, witnesses: bool) -> SearchOptions {
    SearchOptions {
        node_budget: budget,
        witness_budget: budget,
        collect_witnesses: witnesses,
    }
}

fn run_oracle(
    mode: &str,
    n: u32,
    k: u32,
    r: u32,
    l: &LSpec,
    opts: &SearchOptions,
) -> Result<SearchResult, CoreError> {
    match mode {
        "cross2" => oracle_cross2_max(n, k, l, opts),
        "pairwise" => oracle_pairwise_max(n, k, r, l, opts),
        "rcross" => oracle_rcross_max(n, k, r, l, opts),
        other => Err(invalid(&format!("unknown search mode {other:?}"))),
    }
}

fn cmd_search(args: &SearchArgs) -> Result<(String, u8), CoreError> {
    let l = parse_l(&args.l, args.k)?;
    let opts = search_opts(args.budget, !args.no_witnesses);
    let result = run_oracle(&args.mode, args.n, args.k, args.r, &l, &opts)?;
    // A truncated search cannot certify infeasibility, so budget wins.
    let code = if !result.complete {
        EXIT_BUDGET
    } else if result.max.is_none() {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    Ok((serde_json::to_string_pretty(&result)?, code))
}

/// Formula value for verification, per mode, with its asymptotic flag.
fn formula_value(
    mode: &str,
    n: u32,
    k: u32,
    r: u32,
    l: &LSpec,
) -> Result<(Option<u64>, bool), CoreError> {
    match mode {
        "cross2" => {
            let b = bound_cross2(n, k, l)?;
            Ok((b.count.map(|c| c.to_string().parse().unwrap()), false))
        }
        "pairwise" => {
            let b = bound_pairwise_l(n, k, r, l)?;
            let asym = b.asymptotic;
            Ok((b.count.map(|c| c.to_string().parse().unwrap()), asym))
        }
        "rcross" => match l.as_interval() {
            Some((t, hi)) if hi == k => {
                let (v, _) = bound_rcross_t(n, k, t, r)?;
                Ok((Some(v.to_string().parse().unwrap()), false))
            }
            Some((lo, hi)) => {
                let v = bound_rcross_interval(n, k, r, lo, hi + 1)?;
                Ok((Some(v.to_string().parse().unwrap()), true))
            }
            None => Err(CoreError::UnsupportedL(format!(
                "no proven r-cross bound for non-interval L={l}"
            ))),
        },
        other => Err(invalid(&format!("unknown verify mode {other:?}"))),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, u8), CoreError> {
    if let Some(gridspec) = &args.sweep {
        return verify_sweep(args, gridspec);
    }
    let n = args.n.ok_or_else(|| invalid("--n required"))?;
    let k = args.k.ok_or_else(|| invalid("--k required"))?;
    let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, k)?;
    let opts = search_opts(args.budget, !args.no_witness_check);
    let oracle = run_oracle(&args.mode, n, k, args.r, &l, &opts)?;
    let (formula, asymptotic) = formula_value(&args.mode, n, k, args.r, &l)?;
    let equal = oracle.max == formula;

    let witness_match = if args.no_witness_check {
        MatchVerdict::Unknown
    } else {
        match args.mode.as_str() {
            "cross2" => verify_characterization(n, k, &l, &opts)?.witness_match,
            "pairwise" if l.contains(k) && !l.is_interval_to_k() && oracle.complete => {
                let expected = construct_pairwise_extremal(n, k, args.r as usize, &l)?;
                let key = crossl_core::canonical_form(&expected)?.hex();
                if oracle.canonical_keys == vec![key] {
                    MatchVerdict::Match
                } else {
                    MatchVerdict::Mismatch
                }
            }
            _ => MatchVerdict::Unknown,
        }
    };

    let report = VerifyReport {
        mode: args.mode.clone(),
        n,
        k,
        r: args.r,
        l: l.sizes(),
        bound: formula.map_or_else(|| "INFEASIBLE".into(), |v| v.to_string()),
        oracle: oracle.max_sum.clone(),
        equal,
        asymptotic,
        witness_match,
        complete: oracle.complete,
    };
    let code = if !oracle.complete {
        EXIT_BUDGET
    } else if equal && matches!(witness_match, MatchVerdict::Match | MatchVerdict::Unknown) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((serde_json::to_string_pretty(&report)?, code))
}

fn verify_sweep(args: &VerifyArgs, gridspec: &str) -> Result<(String, u8), CoreError> {
    use rayon::prelude::*;
    let points = grid::parse_grid(gridspec, &args.mode)?;
    let budget = args.budget;
    let mode = args.mode.clone();
    let rows: Vec<Result<SweepRow, CoreError>> = points
        .par_iter()
        .map(|p| sweep_row(&mode, p, budget))
        .collect();
    let rows: Result<Vec<SweepRow>, CoreError> = rows.into_iter().collect();
    let rows = rows?;
    let all_equal = rows.iter().all(|r| r.equal);
    let complete = rows.iter().all(|r| r.complete);

    // Empirical thresholds per (k, r, L) slice over n, for asymptotic modes.
    type Slices = std::collections::BTreeMap<(u32, u32, Vec<u32>), Vec<(u32, Option<u64>, Option<u64>)>>;
    let mut thresholds = Vec::new();
    if mode != "cross2" {
        let mut slices: Slices = Default::default();
        for row in &rows {
            slices
                .entry((row.k, row.r, row.l.clone()))
                .or_default()
                .push((row.n, row.oracle_num, row.bound_num));
        }
        for ((k, r, l), mut series) in slices {
            series.sort_by_key(|e| e.0);
            thresholds.push(ThresholdEntry {
                k,
                r,
                l,
                empirical_threshold: empirical_threshold(&series),
            });
        }
    }

    let report = VerifySweepReport {
        mode,
        rows,
        all_equal,
        thresholds,
    };
    let code = if !complete {
        EXIT_BUDGET
    } else if all_equal {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((serde_json::to_string_pretty(&report)?, code))
}

fn sweep_row(mode: &str, p: &grid::GridPoint, budget: u64) -> Result<SweepRow, CoreError> {
    let start = std::time::Instant::now();
    let opts = search_opts(budget, false);
    let oracle = run_oracle(mode, p.n, p.k, p.r, &p.l, &opts)?;
    let (formula, _) = formula_value(mode, p.n, p.k, p.r, &p.l)?;
    Ok(SweepRow {
        mode: mode.to_string(),
        n: p.n,
        k: p.k,
        r: p.r,
        l: p.l.sizes(),
        bound: formula.map_or_else(|| "INFEASIBLE".into(), |v| v.to_string()),
        oracle: oracle.max_sum.clone(),
        equal: oracle.max == formula,
        complete: oracle.complete,
        runtime_ms: start.elapsed().as_millis() as u64,
        oracle_num: oracle.max,
        bound_num: formula,
    })
}

fn cmd_fragments(args: &FragmentsArgs) -> Result<(String, u8), CoreError> {
    let l = parse_l(&args.l, args.k)?;
    let g = IntersectionGraph::build(args.n, args.k, &l)?;
    let report = fragment_report(&g, args.size_cap, args.budget as usize)?;
    let code = if report.complete { EXIT_OK } else { EXIT_BUDGET };
    Ok((serde_json::to_string_pretty(&report)?, code))
}

fn cmd_shadow(args: &ShadowArgs) -> Result<(String, u8), CoreError> {
    let text = std::fs::read_to_string(&args.family)?;
    let fam = SetFamily::from_json(&text)?;
    if fam.is_empty() {
        return Err(invalid("shadow check needs a nonempty family"));
    }
    let shadow = fam.shadow(args.i)?;
    let x = solve_binom_inverse(fam.len() as u64, fam.k());
    let lower = binom_real(x, args.i);
    let satisfied = shadow.len() as f64 >= lower - 1e-6;
    let report = ShadowReport {
        n: fam.n(),
        k: fam.k(),
        i: args.i,
        family_size: fam.len(),
        x,
        shadow_size: shadow.len(),
        lovasz_lower_bound: lower,
        satisfied,
    };
    let code = if satisfied { EXIT_OK } else { EXIT_MISMATCH };
    Ok((serde_json::to_string_pretty(&report)?, code))
}

fn cmd_construct(args: &ConstructArgs) -> Result<(String, u8), CoreError> {
    let families: Vec<SetFamily> = match args.which.as_str() {
        "pairwise" => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            construct_pairwise_extremal(args.n, args.k, args.r as usize, &l)?
                .families()
                .to_vec()
        }
        "rcross_interval" => {
            let lo = args.l_low.ok_or_else(|| invalid("--l-low required"))?;
            let s = args.s.ok_or_else(|| invalid("--s required"))?;
            construct_rcross_extremal(args.n, args.k, args.r as usize, lo, s)?
                .families()
                .to_vec()
        }
        which => {
            let l = parse_l(args.l.as_deref().ok_or_else(need_l)?, args.k)?;
            let seed = match &args.seed_family {
                Some(path) => Some(SetFamily::from_json(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            let default_seed =
                || SetFamily::new(args.n, args.k, [crossl_core::subset::full_mask(args.k)]);
            let variant = match which {
                "star_pair" => Cross2Variant::StarPair,
                "star_star" => Cross2Variant::StarStar,
                "subcube" => Cross2Variant::Subcube,
                "pair_middle" => Cross2Variant::PairMiddle,
                "complement_split" => Cross2Variant::ComplementSplit(match seed {
                    Some(s) => s,
                    None => default_seed()?,
                }),
                "complement_closed" => Cross2Variant::ComplementClosed(match seed {
                    Some(s) => s,
                    None => default_seed()?,
                }),
                other => return Err(invalid(&format!("unknown construction {other:?}"))),
            };
            let (a, b) = construct_cross2_extremal(args.n, args.k, &l, &variant)?;
            vec![a, b]
        }
    };

    let mut files = Vec::new();
    if let Some(prefix) = &args.prefix {
        for (i, fam) in families.iter().enumerate() {
            let path = PathBuf::from(format!("{}_{}.json", prefix.display(), i + 1));
            atomic_write(&path, fam.to_json().as_bytes())?;
            files.push(path.display().to_string());
        }
    }
    let report = ConstructReport {
        which: args.which.clone(),
        n: args.n,
        k: args.k,
        r: families.len(),
        sizes: families.iter().map(|f| f.len()).collect(),
        total: families.iter().map(|f| f.len()).sum(),
        files,
        families: families
            .iter()
            .map(|f| serde_json::from_str(&f.to_json()).expect("family json"))
            .collect(),
    };
    Ok((serde_json::to_string_pretty(&report)?, EXIT_OK))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(String, u8), CoreError> {
    use rayon::prelude::*;
    let points = grid::parse_grid(&args.grid, &args.mode)?;
    let budget = args.budget;
    let mode = args.mode.clone();
    let rows: Vec<Result<SweepRow, CoreError>> = points
        .par_iter()
        .map(|p| sweep_row(&mode, p, budget))
        .collect();
    let rows: Result<Vec<SweepRow>, CoreError> = rows.into_iter().collect();
    let rows = rows?;
    let mut csv = String::from("mode,n,k,r,L,bound,oracle,equal,runtime_ms\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.mode,
            row.n,
            row.k,
            row.r,
            row.l
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            row.bound,
            row.oracle,
            row.equal,
            row.runtime_ms
        ));
    }
    let all_equal = rows.iter().all(|r| r.equal);
    let complete = rows.iter().all(|r| r.complete);
    let code = if !complete {
        EXIT_BUDGET
    } else if all_equal {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((csv, code))
}

fn cache_key(argv: &[String]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(env!("CARGO_PKG_VERSION").as_bytes());
    let mut skip_next = false;
    for a in argv {
        if skip_next {
            skip_next = false;
            continue;
        }
        // The cache location itself must not influence the key.
        if a == "--cache-dir" {
            skip_next = true;
            continue;
        }
        if a.starts_with("--cache-dir=") {
            continue;
        }
        hasher.update([0u8]);
        hasher.update(a.as_bytes());
    }
    crossl_core::util::hex(&hasher.finalize())
}

fn cache_read(dir: &Path, key: &str) -> Option<(String, u8)> {
    let path = dir.join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    Some((entry.output, entry.exit))
}

fn cache_write(dir: &Path, key: &str, body: &str, code: u8) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        key: key.to_string(),
        exit: code,
        output: body.to_string(),
    };
    let path = dir.join(format!("{key}.json"));
    atomic_write(
        &path,
        serde_json::to_string(&entry).expect("cache entry").as_bytes(),
    )
}

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}
