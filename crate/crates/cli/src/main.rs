//! `donkin`: characters, branching, linkage and good-filtration certificates from the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded, 4 verification failure.

mod cache;
mod campaign;
mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use donkin_core::branching::{branch_with, restrict_character_capped, restrict_weight, Catalog, Embedding};
use donkin_core::charcalc::{CharCalc, CharacterStore, WeylSum};
use donkin_core::donkin::{strategy_table, Report, RunOptions};
use donkin_core::modular::{alcove_rep, jantzen_sum, linked, nabla_irreducible, up_arrow, Irreducibility, Prime};
use donkin_core::rootdata::{RootSystem, RootSystemSpec, Weight};

use cache::DiskCache;
use config::{Config, Overrides, CACHE_ENV};

#[derive(Parser)]
#[command(name = "donkin", version, about = "Weyl characters, branching, linkage and good-filtration certificates")]
struct Cli {
    /// TOML config file (default: ./donkin.toml if present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Character cache directory (overrides DONKIN_CACHE_DIR and the config file).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the character cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest Weyl orbit that may be expanded.
    #[arg(long, global = true)]
    orbit_cap: Option<usize>,
    /// Extra embedding stanzas, added to the built-in catalog.
    #[arg(long, global = true)]
    embeddings: Option<PathBuf>,
    /// Print calculator statistics to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dominant weights of ∇(λ) with multiplicities.
    Char { system: String, weight: String },
    /// Restriction of ∇(λ) as a sum of Weyl characters of the subgroup.
    Branch {
        pair: String,
        weight: String,
        /// Append the dimension of each term.
        #[arg(long)]
        dims: bool,
    },
    /// Restricted character at weight level, or with --image only the image of λ.
    Restrict {
        pair: String,
        weight: String,
        #[arg(long)]
        image: bool,
    },
    /// χ(λ) ⊗ χ(μ) as a sum of Weyl characters.
    Tensor { system: String, a: String, b: String },
    /// k-th exterior power of χ(λ).
    Alt { k: u32, system: String, weight: String },
    /// k-th symmetric power of χ(λ).
    Sym { k: u32, system: String, weight: String },
    /// Whether λ and μ lie in one orbit of the affine Weyl group under the dot action.
    Linkage { system: String, p: u32, lambda: String, mu: String },
    /// Jantzen sum of ∇(λ) and the irreducibility verdict.
    Jantzen { system: String, p: u32, weight: String },
    /// The shipped strategy table of a pair.
    Table { pair: String },
    /// Run a campaign file and report certificates.
    Verify {
        campaign: PathBuf,
        /// Write one JSON and one text report per case into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print reports as a JSON array (without timing statistics).
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Print full text reports.
        #[arg(long)]
        text: bool,
        /// Skip table rows marked slow.
        #[arg(long)]
        skip_slow: bool,
        /// Parallel workers over cases.
        #[arg(long)]
        jobs: Option<usize>,
        /// Seed for the sampled induction check.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum CacheAction {
    Stats,
    Clear,
    Verify,
}

enum Failure {
    Input(String),
    Cap(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<donkin_core::Error> for Failure {
    fn from(e: donkin_core::Error) -> Self {
        match e {
            donkin_core::Error::OrbitCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

struct Ctx {
    cfg: Config,
    store: Option<Arc<DiskCache>>,
    catalog: Catalog,
    verbose: bool,
}

impl Ctx {
    fn system(&self, name: &str) -> Result<Arc<RootSystem>, Failure> {
        Ok(RootSystem::build(&name.parse::<RootSystemSpec>()?)?)
    }

    fn calc(&self, rs: &Arc<RootSystem>) -> CharCalc {
        let c = CharCalc::new(Arc::clone(rs)).with_cap(self.cfg.orbit_cap);
        match &self.store {
            Some(s) => c.with_store(Arc::clone(s) as Arc<dyn CharacterStore>),
            None => c,
        }
    }

    fn pair(&self, name: &str) -> Result<Embedding, Failure> {
        Ok(self.catalog.get(name)?)
    }

    fn report_stats(&self, calcs: &[&CharCalc]) {
        if self.verbose {
            for c in calcs {
                eprintln!("{}: {:?}", c.system().spec(), c.stats());
            }
        }
        if let Some(s) = &self.store {
            if s.rejected() > 0 || s.write_errors() > 0 {
                eprintln!("cache: {} entries rejected, {} write errors", s.rejected(), s.write_errors());
            }
        }
    }
}

fn weight(rs: &RootSystem, text: &str) -> Result<Weight, Failure> {
    Ok(rs.parse_weight(text)?)
}

fn prime(p: u32) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn sum_text(s: &WeylSum, calc: Option<&CharCalc>) -> Out {
    let Some(calc) = calc else { return Ok(s.to_text()) };
    if s.is_empty() {
        return Ok(s.to_text());
    }
    let mut out = String::new();
    for (w, c) in s.sorted() {
        let _ = writeln!(out, "{w} {c} (dim {})", calc.weyl_dim(w)?);
    }
    let _ = writeln!(out, "dimension {}", calc.dim_of(s)?);
    Ok(out)
}

fn cmd_char(ctx: &Ctx, system: &str, w: &str) -> Out {
    let rs = ctx.system(system)?;
    let lam = weight(&rs, w)?;
    let calc = ctx.calc(&rs);
    let ch = calc.freudenthal(&lam)?;
    let mut out = ch.to_text();
    let distinct: num_bigint::BigUint = ch.iter().map(|(mu, _)| rs.orbit_size(mu)).collect::<Result<Vec<_>, _>>()?.into_iter().sum();
    let _ = writeln!(out, "dominant weights {}", ch.len());
    let _ = writeln!(out, "weights {distinct}");
    let _ = writeln!(out, "dimension {}", ch.dim());
    ctx.report_stats(&[&calc]);
    Ok(out)
}

fn cmd_branch(ctx: &Ctx, pair: &str, w: &str, dims: bool) -> Out {
    let e = ctx.pair(pair)?;
    let lam = weight(e.source(), w)?;
    let (g, h) = (ctx.calc(e.source()), ctx.calc(e.target()));
    let s = branch_with(&e, &g, &h, &lam)?;
    ctx.report_stats(&[&g, &h]);
    sum_text(&s, dims.then_some(&h))
}

fn cmd_restrict(ctx: &Ctx, pair: &str, w: &str, image: bool) -> Out {
    let e = ctx.pair(pair)?;
    let lam = weight(e.source(), w)?;
    if image {
        return Ok(format!("{}\n", restrict_weight(&e, &lam)?));
    }
    let g = ctx.calc(e.source());
    let ch = g.freudenthal(&lam)?;
    let res = restrict_character_capped(&e, &ch, ctx.cfg.orbit_cap)?;
    ctx.report_stats(&[&g]);
    Ok(res.to_text())
}

fn cmd_tensor(ctx: &Ctx, system: &str, a: &str, b: &str) -> Out {
    let rs = ctx.system(system)?;
    let (x, y) = (weight(&rs, a)?, weight(&rs, b)?);
    let calc = ctx.calc(&rs);
    let s = calc.tensor(&WeylSum::single(Arc::clone(&rs), x)?, &WeylSum::single(Arc::clone(&rs), y)?)?;
    ctx.report_stats(&[&calc]);
    Ok(s.to_text())
}

fn cmd_power(ctx: &Ctx, k: u32, system: &str, w: &str, alt: bool) -> Out {
    let rs = ctx.system(system)?;
    let lam = weight(&rs, w)?;
    let calc = ctx.calc(&rs);
    let base = WeylSum::single(Arc::clone(&rs), lam)?;
    let s = if alt { calc.alt_power(k, &base)? } else { calc.sym_power(k, &base)? };
    ctx.report_stats(&[&calc]);
    Ok(s.to_text())
}

fn cmd_linkage(ctx: &Ctx, system: &str, p: u32, a: &str, b: &str) -> Out {
    let rs = ctx.system(system)?;
    let p = prime(p)?;
    let (lam, mu) = (weight(&rs, a)?, weight(&rs, b)?);
    let mut out = String::new();
    let link = linked(&rs, p, &lam, &mu)?;
    let _ = writeln!(out, "{}", if link { "LINKED" } else { "UNLINKED" });
    let _ = writeln!(out, "alcove {} {}", alcove_rep(&rs, p, &lam)?, alcove_rep(&rs, p, &mu)?);
    if lam.is_dominant() && mu.is_dominant() {
        let _ = writeln!(out, "{lam} ↑ {mu}: {}", if up_arrow(&rs, p, &lam, &mu)? { "yes" } else { "no" });
        let _ = writeln!(out, "{mu} ↑ {lam}: {}", if up_arrow(&rs, p, &mu, &lam)? { "yes" } else { "no" });
    }
    Ok(out)
}

fn cmd_jantzen(ctx: &Ctx, system: &str, p: u32, w: &str) -> Out {
    let rs = ctx.system(system)?;
    let p = prime(p)?;
    let lam = weight(&rs, w)?;
    let mut out = jantzen_sum(&rs, p, &lam)?.to_text();
    match nabla_irreducible(&rs, p, &lam)? {
        Irreducibility::Yes(reasons) => {
            let r: Vec<String> = reasons.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(out, "irreducible: yes ({})", r.join(", "));
        }
        Irreducibility::Unknown { component, weight } => {
            let _ = writeln!(out, "irreducible: unknown (component {} at {weight})", component + 1);
        }
    }
    Ok(out)
}

fn cmd_table(pair: &str) -> Out {
    let t = strategy_table(pair)?;
    Ok(format!("# {} (p ≥ {})\n{}", t.pair, t.min_p, t.to_text()))
}

fn report_file_stem(r: &Report) -> String {
    format!("{}-p{}", r.case.pair.replace('/', "_"), r.case.p)
}

fn json_without_stats(r: &Report) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if let Some(m) = v.as_object_mut() {
        m.remove("stats");
    }
    v
}

struct VerifyArgs<'a> {
    campaign: &'a Path,
    out: Option<&'a Path>,
    json: bool,
    text: bool,
    skip_slow: bool,
    jobs: Option<usize>,
    seed: Option<u64>,
}

fn cmd_verify(ctx: &Ctx, a: VerifyArgs<'_>) -> Out {
    let text = std::fs::read_to_string(a.campaign).map_err(|e| Failure::Input(format!("{}: {e}", a.campaign.display())))?;
    let cases = campaign::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", a.campaign.display())))?;
    let mut options = RunOptions { skip_slow: a.skip_slow, ..RunOptions::default() };
    if let Some(s) = a.seed {
        options.seed = s;
    }
    let settings = campaign::RunSettings {
        orbit_cap: ctx.cfg.orbit_cap,
        store: ctx.store.as_ref().map(|s| Arc::clone(s) as Arc<dyn CharacterStore>),
        options,
        jobs: a.jobs.unwrap_or(ctx.cfg.jobs).max(1),
    };
    let start = Instant::now();
    let reports = campaign::run(&cases, &ctx.cfg.primes, &settings).map_err(Failure::Input)?;
    for r in &reports {
        eprintln!("{} p={}: {} in {} ms", r.case.pair, r.case.p, r.status, r.stats.elapsed_ms);
    }
    eprintln!("{} cases in {:.1?}", reports.len(), start.elapsed());
    ctx.report_stats(&[]);
    if let Some(dir) = a.out {
        let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for r in &reports {
            let stem = report_file_stem(r);
            let json = serde_json::to_string_pretty(r).expect("reports serialize");
            std::fs::write(dir.join(format!("{stem}.json")), json + "\n").map_err(io)?;
            std::fs::write(dir.join(format!("{stem}.txt")), r.to_text()).map_err(io)?;
        }
    }
    let mut out = String::new();
    if a.json {
        let all: Vec<serde_json::Value> = reports.iter().map(json_without_stats).collect();
        out = serde_json::to_string_pretty(&all).expect("reports serialize") + "\n";
    } else {
        for r in &reports {
            if a.text {
                out.push_str(&r.to_text());
            } else {
                let _ = writeln!(out, "{} p={}: {}", r.case.pair, r.case.p, r.status);
            }
        }
    }
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.status.is_certified())
        .map(|r| format!("{} p={} {}", r.case.pair, r.case.p, r.status))
        .collect();
    if bad.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verify(format!("not certified: {}", bad.join(", "))))
    }
}

fn cmd_cache(ctx: &Ctx, action: CacheAction) -> Out {
    let Some(store) = &ctx.store else {
        return Err(Failure::Input("the cache is disabled".into()));
    };
    let dir = store.dir().display();
    match action {
        CacheAction::Stats => {
            let s = store.stats();
            let mut out = format!("cache {dir}\nentries {}\nbytes {}\n", s.entries, s.bytes);
            for (sys, n) in s.systems {
                let _ = writeln!(out, "  {sys} {n}");
            }
            Ok(out)
        }
        CacheAction::Clear => {
            let n = store.clear().map_err(|e| Failure::Input(format!("{dir}: {e}")))?;
            Ok(format!("removed {n} entries\n"))
        }
        CacheAction::Verify => {
            let (good, bad) = store.verify();
            if bad.is_empty() {
                return Ok(format!("OK, {good} entries\n"));
            }
            let mut out = String::new();
            for b in &bad {
                let _ = writeln!(out, "BAD {}: {}", b.path.display(), b.reason);
            }
            let _ = writeln!(out, "{good} good, {} bad entries", bad.len());
            print!("{out}");
            Err(Failure::Verify(format!("{} corrupt cache entries", bad.len())))
        }
    }
}

fn run(cli: Cli) -> Out {
    let flags = Overrides {
        cache_dir: cli.cache_dir.clone(),
        no_cache: cli.no_cache,
        orbit_cap: cli.orbit_cap,
        jobs: None,
    };
    let env_cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let cfg = Config::load(cli.config.as_deref(), env_cache, &flags).map_err(Failure::Input)?;
    let store = cfg.cache_dir.as_ref().map(|d| Arc::new(DiskCache::new(d)));
    let mut catalog = Catalog::builtin()?;
    if let Some(path) = &cli.embeddings {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        catalog.add_stanzas(&text)?;
    }
    let ctx = Ctx { cfg, store, catalog, verbose: cli.verbose };
    match &cli.command {
        Command::Char { system, weight } => cmd_char(&ctx, system, weight),
        Command::Branch { pair, weight, dims } => cmd_branch(&ctx, pair, weight, *dims),
        Command::Restrict { pair, weight, image } => cmd_restrict(&ctx, pair, weight, *image),
        Command::Tensor { system, a, b } => cmd_tensor(&ctx, system, a, b),
        Command::Alt { k, system, weight } => cmd_power(&ctx, *k, system, weight, true),
        Command::Sym { k, system, weight } => cmd_power(&ctx, *k, system, weight, false),
        Command::Linkage { system, p, lambda, mu } => cmd_linkage(&ctx, system, *p, lambda, mu),
        Command::Jantzen { system, p, weight } => cmd_jantzen(&ctx, system, *p, weight),
        Command::Table { pair } => cmd_table(pair),
        Command::Verify { campaign, out, json, text, skip_slow, jobs, seed } => cmd_verify(
            &ctx,
            VerifyArgs {
                campaign,
                out: out.as_deref(),
                json: *json,
                text: *text,
                skip_slow: *skip_slow,
                jobs: *jobs,
                seed: *seed,
            },
        ),
        Command::Cache { action } => cmd_cache(&ctx, *action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
