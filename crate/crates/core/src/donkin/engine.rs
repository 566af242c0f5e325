use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cert::{CertSet, CertStep, Evidence, StepStatus};
use super::tables::{Strategy, StrategyTable};
use super::three_pieces::{scaled_sigmas, verify_three_pieces};
use super::verify::{
    verify_aux, verify_e6c4_omega2, verify_irreducible_layers, verify_socle_product, verify_symmetry,
};
use super::PairCase;
use crate::charcalc::{CalcStats, WeylSum};
use crate::error::{Error, Result};
use crate::rootdata::Weight;

/// Knobs for [`run_pair`].
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Skip rows marked slow; the report is then at best `Incomplete`.
    pub skip_slow: bool,
    /// Random `λ1 + λ2` samples for the general-induction check.
    pub induction_samples: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            skip_slow: false,
            induction_samples: 50,
            seed: 0x5eed,
        }
    }
}

/// Overall verdict for one pair and prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ReportStatus {
    Certified,
    CertifiedWithExternal,
    Incomplete,
    Failed,
}

impl ReportStatus {
    pub fn is_certified(self) -> bool {
        matches!(self, ReportStatus::Certified | ReportStatus::CertifiedWithExternal)
    }
}

impl std::fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReportStatus::Certified => "Certified",
            ReportStatus::CertifiedWithExternal => "CertifiedWithExternal",
            ReportStatus::Incomplete => "Incomplete",
            ReportStatus::Failed => "Failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseInfo {
    pub pair: String,
    pub source: String,
    pub target: String,
    pub p: u32,
}

/// Sampled check that every non-fundamental `λ = λ1 + λ2` is handled by `∇(λ1) ⊗ ∇(λ2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionNote {
    pub statement: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

/// Timing and cache counters; excluded when comparing reports.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunStats {
    pub elapsed_ms: u128,
    pub source: CalcStats,
    pub target: CalcStats,
}

/// Certificate for one pair at one prime.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub case: CaseInfo,
    pub steps: Vec<CertStep>,
    pub induction: Option<InductionNote>,
    pub status: ReportStatus,
    pub stats: RunStats,
}

impl Report {
    /// Same case, steps, induction note and status; stats are ignored.
    pub fn same_outcome(&self, other: &Report) -> bool {
        self.case == other.case
            && self.steps == other.steps
            && self.induction == other.induction
            && self.status == other.status
    }

    pub fn step(&self, weight: &Weight) -> Option<&CertStep> {
        self.steps.iter().find(|s| s.key.as_ref() == Some(weight))
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.case;
        let _ = writeln!(out, "case {} ({} ⊃ {}) p={}: {}", c.pair, c.source, c.target, c.p, self.status);
        for s in &self.steps {
            let _ = writeln!(out, "  {} {} via {}", s.status, s.weight, s.strategy);
            for e in &s.evidence {
                let _ = writeln!(out, "      {e}");
            }
            if !s.dependencies.is_empty() {
                let _ = writeln!(out, "      uses {}", s.dependencies.join(", "));
            }
        }
        if let Some(n) = &self.induction {
            let _ = writeln!(out, "  induction: {}", n.statement);
            let _ = writeln!(out, "      {} samples, {} failures", n.samples, n.failures.len());
            for f in &n.failures {
                let _ = writeln!(out, "      FAIL {f}");
            }
        }
        out
    }
}

fn run_row(case: &PairCase, key: Option<&Weight>, strategy: &Strategy, certified: &CertSet) -> Result<CertStep> {
    let need = || key.ok_or_else(|| Error::Precondition(format!("{strategy} needs a weight")));
    match strategy {
        Strategy::IrreducibleLayers => verify_irreducible_layers(case, need()?),
        Strategy::SocleProduct => verify_socle_product(case, need()?),
        Strategy::Aux(recipe) => verify_aux(case, need()?, recipe, certified),
        Strategy::Symmetry(i) => verify_symmetry(case, need()?, *i, certified),
        Strategy::AdjointE6C4 => {
            let lam = need()?;
            if *lam != case.source().fundamental(2) {
                return Err(Error::Precondition(format!("adjoint argument certifies ϖ2, not {lam}")));
            }
            verify_e6c4_omega2(case)
        }
        Strategy::ThreePieces { base, external } => {
            verify_three_pieces(case, &scaled_sigmas(case, base)?, external.as_deref())
        }
    }
}

/// Runs the table's rows at the case's prime, in order, accumulating certified weights.
pub fn run_pair(case: &PairCase, table: &StrategyTable, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let g = case.source();
    let p = case.p().get();
    let mut certified = CertSet::new(Arc::clone(g));
    let mut steps = Vec::new();
    let whole = "all dominant weights".to_string();
    if p < table.min_p {
        steps.push(CertStep::failed(
            None,
            whole,
            "table".into(),
            format!("the table for {} is for p ≥ {}", table.pair, table.min_p),
        ));
    } else if let Err(e) = table.check_order(g) {
        steps.push(CertStep::failed(None, whole, "table".into(), e.to_string()));
    } else {
        let selected = table.select(p);
        for (w, row) in &selected {
            let key = w.map(|i| g.fundamental(i));
            let label = key.as_ref().map_or_else(|| whole.clone(), |k| k.to_string());
            let step = match row {
                None => CertStep::failed(key, label, "none".into(), format!("no row applies at p = {p}")),
                Some(r) if r.slow && opts.skip_slow => CertStep {
                    weight: label,
                    key,
                    strategy: r.strategy.to_string(),
                    status: StepStatus::Skipped,
                    evidence: vec![Evidence::note("slow row skipped")],
                    dependencies: Vec::new(),
                },
                Some(r) => match run_row(case, key.as_ref(), &r.strategy, &certified) {
                    Ok(s) => s,
                    Err(e) => CertStep::failed(key, label, r.strategy.to_string(), e.to_string()),
                },
            };
            certified.insert(step.clone());
            steps.push(step);
        }
        if !selected.iter().any(|(w, _)| w.is_none()) {
            for i in 1..=g.rank() {
                if !selected.iter().any(|(w, _)| *w == Some(i)) {
                    let k = g.fundamental(i);
                    steps.push(CertStep::failed(
                        Some(k.clone()),
                        k.to_string(),
                        "none".into(),
                        "fundamental weight missing from the table".into(),
                    ));
                }
            }
        }
    }
    let per_weight = table.rows.iter().any(|r| r.weight.is_some());
    let induction = per_weight.then(|| induction_check(case, opts));
    let mut status = ReportStatus::Certified;
    for s in &steps {
        let st = match s.status {
            StepStatus::Certified => ReportStatus::Certified,
            StepStatus::CertifiedWithExternal => ReportStatus::CertifiedWithExternal,
            StepStatus::Skipped => ReportStatus::Incomplete,
            StepStatus::Failed => ReportStatus::Failed,
        };
        status = status.max(st);
    }
    if induction.as_ref().is_some_and(|n| !n.failures.is_empty()) {
        status = ReportStatus::Failed;
    }
    Report {
        case: CaseInfo {
            pair: table.pair.clone(),
            source: g.spec().to_string(),
            target: case.target().spec().to_string(),
            p,
        },
        steps,
        induction,
        status,
        stats: RunStats {
            elapsed_ms: start.elapsed().as_millis(),
            source: case.g().stats(),
            target: case.h().stats(),
        },
    }
}

/// Largest Weyl dimension of the factor expanded in an induction sample.
const INDUCTION_DIM_BUDGET: u64 = 50_000;
const INDUCTION_LEVEL: u32 = 12;

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, level: u32) -> Vec<i32> {
    let mut c = vec![0i32; rank];
    for _ in 0..level {
        c[rng.gen_range(0..rank)] += 1;
    }
    c
}

/// Samples `λ = λ1 + λ2` (fundamental coordinates summing to at most 12) and checks that
/// `∇(λ1) ⊗ ∇(λ2)` has `χ(λ)` once and every other layer strictly below `λ`.
pub fn induction_check(case: &PairCase, opts: &RunOptions) -> InductionNote {
    let g = case.source();
    let calc = case.g();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    let mut samples = 0;
    let mut attempts = 0;
    let budget = BigInt::from(INDUCTION_DIM_BUDGET);
    while samples < opts.induction_samples && attempts < 1000 * opts.induction_samples.max(1) {
        attempts += 1;
        let l1 = rng.gen_range(1..=INDUCTION_LEVEL / 2);
        let l2 = rng.gen_range(1..=INDUCTION_LEVEL - l1);
        let a = g.wrap(random_dominant(&mut rng, g.rank(), l1).into_iter().collect());
        let b = g.wrap(random_dominant(&mut rng, g.rank(), l2).into_iter().collect());
        let small = match (calc.weyl_dim(&a), calc.weyl_dim(&b)) {
            (Ok(x), Ok(y)) => x.min(y),
            _ => continue,
        };
        if small > budget {
            continue;
        }
        samples += 1;
        let lam = &a + &b;
        let outcome = (|| -> Result<Option<String>> {
            let s = calc.tensor(
                &WeylSum::single(Arc::clone(g), a.clone())?,
                &WeylSum::single(Arc::clone(g), b.clone())?,
            )?;
            if !s.coeff(&lam).is_one() {
                return Ok(Some(format!("{a} ⊗ {b}: coefficient of {lam} is {}", s.coeff(&lam))));
            }
            for (mu, c) in s.iter() {
                if mu != &lam && (c.is_negative() || !g.dominance_lt(mu, &lam)?) {
                    return Ok(Some(format!("{a} ⊗ {b}: layer {mu} ×{c} is not strictly below {lam}")));
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(f)) => failures.push(f),
            Err(e) => failures.push(format!("{a} ⊗ {b}: {e}")),
        }
    }
    if samples < opts.induction_samples {
        failures.push(format!("only {samples} of {} samples within budget", opts.induction_samples));
    }
    InductionNote {
        statement: "a non-fundamental λ = λ1 + λ2 is certified from ∇(λ1) ⊗ ∇(λ2), whose other layers lie strictly below λ"
            .into(),
        samples,
        failures,
    }
}
