//! Campaign files: which pairs to verify, at which primes, with optional table overrides.
//!
//! ```text
//! # comment
//! case E7/A7
//! primes 3 5 7
//! row w5 any aux tensor(w1,w2)
//! end
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use donkin_core::branching::catalog;
use donkin_core::charcalc::{CharCalc, CharacterStore};
use donkin_core::donkin::{run_pair, strategy_table, PairCase, Report, Row, RunOptions, StrategyTable};
use donkin_core::modular::Prime;

/// One `case … end` stanza, with overrides already applied to the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSpec {
    pub pair: String,
    /// `None` means the configured default list.
    pub primes: Option<Vec<u32>>,
    pub table: StrategyTable,
}

pub fn parse(text: &str) -> Result<Vec<CaseSpec>, String> {
    let mut out = Vec::new();
    let mut open: Option<(usize, String, Option<Vec<u32>>, Vec<Row>)> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| format!("line {}: {msg}", n + 1);
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match (key, &mut open) {
            ("case", None) => {
                if rest.is_empty() {
                    return Err(at("case needs a pair name".into()));
                }
                strategy_table(rest).map_err(|e| at(e.to_string()))?;
                open = Some((n + 1, rest.to_string(), None, Vec::new()));
            }
            ("case", Some(_)) => return Err(at("case inside an open case; missing end".into())),
            ("primes", Some((_, _, primes, _))) => {
                if primes.is_some() {
                    return Err(at("primes given twice".into()));
                }
                let list = rest
                    .split_whitespace()
                    .map(|t| {
                        let p: u32 = t.parse().map_err(|_| at(format!("bad prime {t:?}")))?;
                        Prime::new(p).map_err(|e| at(e.to_string()))?;
                        Ok(p)
                    })
                    .collect::<Result<Vec<u32>, String>>()?;
                if list.is_empty() {
                    return Err(at("primes needs at least one prime".into()));
                }
                *primes = Some(list);
            }
            ("row", Some((_, pair, _, rows))) => {
                let e = catalog(pair).map_err(|e| at(e.to_string()))?;
                rows.push(Row::parse(e.source(), rest).map_err(|e| at(e.to_string()))?);
            }
            ("end", Some(_)) => {
                let (_, pair, primes, rows) = open.take().expect("checked open");
                let table = strategy_table(&pair).map_err(|e| at(e.to_string()))?.with_overrides(rows);
                out.push(CaseSpec { pair, primes, table });
            }
            (k, None) => return Err(at(format!("{k} outside a case"))),
            (k, Some(_)) => return Err(at(format!("unknown keyword {k:?}"))),
        }
    }
    if let Some((start, pair, ..)) = open {
        return Err(format!("case {pair} opened on line {start} has no end"));
    }
    Ok(out)
}

/// Settings shared by every case of a run.
pub struct RunSettings {
    pub orbit_cap: usize,
    pub store: Option<Arc<dyn CharacterStore>>,
    pub options: RunOptions,
    pub jobs: usize,
}

fn calc(rs: &Arc<donkin_core::rootdata::RootSystem>, s: &RunSettings) -> CharCalc {
    let c = CharCalc::new(Arc::clone(rs)).with_cap(s.orbit_cap);
    match &s.store {
        Some(store) => c.with_store(Arc::clone(store)),
        None => c,
    }
}

fn run_one(case: &CaseSpec, p: u32, s: &RunSettings) -> Result<Report, String> {
    let e = catalog(&case.pair).map_err(|e| e.to_string())?;
    let (g, h) = (calc(e.source(), s), calc(e.target(), s));
    let prime = Prime::new(p).map_err(|e| e.to_string())?;
    let pc = PairCase::with_calcs(e, prime, g, h).map_err(|e| e.to_string())?;
    Ok(run_pair(&pc, &case.table, &s.options))
}

/// Runs every `(case, prime)` and returns reports in campaign order.
pub fn run(cases: &[CaseSpec], default_primes: &[u32], s: &RunSettings) -> Result<Vec<Report>, String> {
    let work: Vec<(&CaseSpec, u32)> = cases
        .iter()
        .flat_map(|c| c.primes.as_deref().unwrap_or(default_primes).iter().map(move |&p| (c, p)))
        .collect();
    let results: Mutex<Vec<Option<Result<Report, String>>>> = Mutex::new(vec![None; work.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..s.jobs.clamp(1, work.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(case, p)) = work.get(i) else { break };
                let r = run_one(case, p, s);
                results.lock().expect("results lock")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .map(|r| r.expect("every case ran"))
        .collect()
}
