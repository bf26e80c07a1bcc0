//! `treespace`: command-line surface over the pattern census.
//!
//! Exit codes: 0 success, 1 usage or spec error, 2 resource refusal,
//! 3 internal invariant violation.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use treespace::census::{
    box_dim_estimates, fusion_witnesses, growth_diagnostic, orbit_cover_count, Census, Depth, Limits, PatternCache,
    SpaceSpec,
};
use treespace::pattern::distance_exponent;
use treespace::trees::{parse_tree, Fusion, Tree};
use treespace::{Agreement, Error};

#[derive(Parser, Debug)]
#[command(name = "treespace", version, about = "Pattern census for pointed trees over free groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the distinct radius-m patterns of a space.
    Patterns(PatternsArgs),
    /// Cover counts and box-dimension estimates over a range of radii.
    Boxdim(RangeArgs),
    /// Test the bound N_m < e^{m·alpha} level by level.
    Diagnose(DiagnoseArgs),
    /// Agreement exponent r of two trees, d = e^{-r}.
    Distance(DistanceArgs),
    /// Distinct radius-l patterns seen from the vertices of a tree.
    Orbit(OrbitArgs),
    /// Search a fused tree for both parts' balls up to radius K.
    FuseCheck(FuseArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Directory for cached enumerations (off unless set).
    #[arg(long, env = "TREESPACE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Seed for trees given without one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the largest radius the census will attempt.
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// full:n=N | valence3 | shift:k=K[:alpha=..][:n=N]
    #[arg(long)]
    space: Option<String>,
    /// Orbit closure of a tree spec, e.g. branch:l2.
    #[arg(long)]
    tree: Option<String>,
}

#[derive(Args, Debug)]
struct PatternsArgs {
    #[command(flatten)]
    source: Source,
    /// Radius.
    #[arg(long = "m", alias = "l")]
    m: usize,
    /// Orbit exploration depth (default m + 2).
    #[arg(long = "R")]
    depth: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[command(flatten)]
    source: Source,
    /// Radii as a..b or a single value.
    #[arg(long = "m", alias = "l", value_parser = parse_range)]
    m: RangeInclusive<usize>,
    /// Orbit exploration depth (default m + 2 for each m).
    #[arg(long = "R")]
    depth: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DiagnoseArgs {
    #[command(flatten)]
    range: RangeArgs,
    /// Exponent alpha >= 0, or inf.
    #[arg(long)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[arg(long)]
    t1: String,
    #[arg(long)]
    t2: String,
    #[arg(long, default_value_t = 10)]
    cap: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    tree: String,
    #[arg(long = "l", alias = "m")]
    l: usize,
    /// Exploration depth (default l + 2).
    #[arg(long = "R")]
    depth: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FuseArgs {
    #[arg(long)]
    t1: String,
    #[arg(long)]
    t2: String,
    #[arg(long = "K")]
    k: usize,
    /// Largest |g| searched (default 3K + 4).
    #[arg(long)]
    search: Option<usize>,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

enum Failure {
    Usage(String),
    Lib(Error),
    Contract(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceBound { .. } => 2,
                Error::Invariant(_) => 3,
                _ => 1,
            })
        }
    }
}

fn census(common: &Common) -> Result<Census, Failure> {
    let mut c = Census::new(common.workers)?;
    if let Some(b) = common.bound {
        c = c.with_limits(Limits::uniform(b));
    }
    if let Some(dir) = &common.cache_dir {
        c = c.with_cache(PatternCache::new(dir)?);
    }
    Ok(c)
}

fn space(source: &Source, depth: Option<usize>, seed: u64) -> Result<SpaceSpec, Failure> {
    match (&source.space, &source.tree) {
        (Some(s), None) => {
            if depth.is_some() {
                return Err(Failure::Usage("--R only applies to --tree".into()));
            }
            Ok(SpaceSpec::parse(s)?)
        }
        (None, Some(t)) => {
            let depth = depth.map_or(Depth::Ahead(2), Depth::Fixed);
            Ok(SpaceSpec::parse_orbit(t, depth, seed)?)
        }
        _ => Err(Failure::Usage("give exactly one of --space or --tree".into())),
    }
}

fn tree(spec: &str, seed: u64) -> Result<Tree, Failure> {
    Ok(parse_tree(spec, seed)?)
}

fn agreement_json(a: Agreement) -> serde_json::Value {
    json!({ "r": a.radius(), "capped": a.is_capped(), "display": a.to_string() })
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Patterns(a) => {
            let spec = space(&a.source, a.depth, a.common.seed)?;
            let pats = census(&a.common)?.enumerate(&spec, a.m)?;
            Ok(match a.common.format {
                None => pats.iter().map(|p| format!("{}\n", p.to_canonical_json())).collect(),
                Some(Format::Json) => {
                    format!("{}\n", json!({ "space": spec.name(), "m": a.m, "count": pats.len(), "patterns": pats }))
                }
                Some(Format::Csv) => {
                    let mut out = String::from("index,hash,vertices\n");
                    for (i, p) in pats.iter().enumerate() {
                        let vs: Vec<String> = p.vertices().iter().map(|w| w.to_string()).collect();
                        writeln!(out, "{i},{},{}", p.content_hash(), vs.join(" ")).unwrap();
                    }
                    out
                }
            })
        }
        Command::Boxdim(a) => {
            let spec = space(&a.source, a.depth, a.common.seed)?;
            let table = census(&a.common)?.count_table(&spec, a.m.clone())?;
            let est = box_dim_estimates(&table)?;
            Ok(match a.common.format.unwrap_or(Format::Csv) {
                Format::Csv => est.to_csv(),
                Format::Json => format!("{}\n", json!({ "table": table, "estimate": est })),
            })
        }
        Command::Diagnose(d) => {
            let a = d.range;
            let spec = space(&a.source, a.depth, a.common.seed)?;
            let table = census(&a.common)?.count_table(&spec, a.m.clone())?;
            let diag = growth_diagnostic(&table, d.alpha)?;
            Ok(match a.common.format.unwrap_or(Format::Json) {
                Format::Json => format!("{}\n", diag.to_json()),
                Format::Csv => diag.to_csv(),
            })
        }
        Command::Distance(a) => {
            let t1 = tree(&a.t1, a.common.seed)?;
            let t2 = tree(&a.t2, a.common.seed)?;
            if t1.rank() != t2.rank() {
                return Err(Failure::Lib(Error::RankMismatch { expected: t1.rank(), found: t2.rank() }));
            }
            let r = distance_exponent(&*t1, &*t2, a.cap);
            Ok(match a.common.format.unwrap_or(Format::Json) {
                Format::Json => format!(
                    "{}\n",
                    json!({ "t1": a.t1, "t2": a.t2, "cap": a.cap, "agreement": agreement_json(r), "distance": r.distance() })
                ),
                Format::Csv => format!("t1,t2,cap,r,capped\n{},{},{},{},{}\n", a.t1, a.t2, a.cap, r.radius(), r.is_capped()),
            })
        }
        Command::Orbit(a) => {
            let t = tree(&a.tree, a.common.seed)?;
            let depth = a.depth.unwrap_or(a.l + 2);
            let bound = a.common.bound.unwrap_or(Limits::default().orbit);
            if a.l > bound {
                let orbit = SpaceSpec::parse_orbit(&a.tree, Depth::Fixed(depth), a.common.seed)?;
                return Err(Failure::Lib(Error::ResourceBound {
                    what: "orbit count",
                    space: orbit.name(),
                    m: a.l,
                    bound,
                    lower_bound: 1u32.into(),
                }));
            }
            let c = census(&a.common)?.install(|| orbit_cover_count(&*t, a.l, depth))?;
            Ok(match a.common.format.unwrap_or(Format::Json) {
                Format::Json => format!("{}\n", json!({ "tree": a.tree, "result": c })),
                Format::Csv => format!(
                    "l,R,count,previous,stabilized\n{},{},{},{},{}\n",
                    c.radius, c.depth, c.count, c.previous, c.stabilized
                ),
            })
        }
        Command::FuseCheck(a) => {
            let t1 = tree(&a.t1, a.common.seed)?;
            let t2 = if a.t1 == a.t2 { t1.clone() } else { tree(&a.t2, a.common.seed)? };
            let fused = Arc::new(Fusion::new(t1.clone(), t2.clone(), a.k)?);
            let search = a.search.unwrap_or(3 * a.k + 4);
            let witnesses = fusion_witnesses(&*fused, &[&*t1, &*t2], a.k, search);
            let missing = witnesses.iter().filter(|w| w.vertex.is_none()).count();
            let out = match a.common.format.unwrap_or(Format::Json) {
                Format::Json => format!(
                    "{}\n",
                    json!({ "t1": a.t1, "t2": a.t2, "K": a.k, "search": search, "witnesses": witnesses, "complete": missing == 0 })
                ),
                Format::Csv => {
                    let mut out = String::from("k,part,vertex\n");
                    for w in &witnesses {
                        writeln!(out, "{},{},{}", w.k, w.part, w.vertex.as_deref().unwrap_or("")).unwrap();
                    }
                    out
                }
            };
            if missing > 0 {
                print!("{out}");
                return Err(Failure::Contract(format!("fusion contract: {missing} witness(es) missing within |g| <= {search}")));
            }
            Ok(out)
        }
    }
}
