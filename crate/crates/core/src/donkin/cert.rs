use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::modular::IrreducibilityReason;
use crate::rootdata::{RootSystem, Weight};

/// Outcome of one verification step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StepStatus {
    Certified,
    /// Certified, but relying on a recorded claim the engine did not check.
    CertifiedWithExternal,
    /// Not attempted (for example a slow row under `--skip-slow`).
    Skipped,
    Failed,
}

impl StepStatus {
    pub fn is_certified(self) -> bool {
        matches!(self, StepStatus::Certified | StepStatus::CertifiedWithExternal)
    }
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepStatus::Certified => "Certified",
            StepStatus::CertifiedWithExternal => "CertifiedWithExternal",
            StepStatus::Skipped => "Skipped",
            StepStatus::Failed => "Failed",
        })
    }
}

/// One item of evidence. Weights and integers are rendered as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The weight being certified occurs in the auxiliary module.
    Target { weight: String, coeff: String },
    /// `μ < λ` and `μ` is certified, or every fundamental weight `≤ μ` is (`covered_by`).
    Dominated {
        weight: String,
        coeff: String,
        certified: bool,
        covered_by: Vec<String>,
    },
    /// `μ` and `λ` lie in different dot orbits of the affine Weyl group.
    Unlinked {
        weight: String,
        coeff: String,
        alcove_target: String,
        alcove_weight: String,
    },
    /// Failure: `μ` is linked to `λ` and not dominated by a certified weight.
    Linked { weight: String, coeff: String, alcove: String },
    /// A layer `∇_H(μ)` shown irreducible.
    Layer {
        weight: String,
        coeff: String,
        dim: String,
        reasons: Vec<IrreducibilityReason>,
    },
    /// Failure: a layer whose irreducibility could not be shown.
    Unknown { weight: String, coeff: String, component: usize },
    /// A Levi-factor weight and its unique `A1` partner.
    Pairing {
        levi: String,
        a1: String,
        coeff: String,
        reasons: Vec<IrreducibilityReason>,
    },
    Check { name: String, passed: bool, detail: String },
    /// A mathematical claim recorded but not machine-checked.
    External { claim: String },
    Note { text: String },
}

impl Evidence {
    pub fn check(name: &str, passed: bool, detail: impl Into<String>) -> Evidence {
        Evidence::Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn note(text: impl Into<String>) -> Evidence {
        Evidence::Note { text: text.into() }
    }

    pub fn is_failure(&self) -> bool {
        matches!(
            self,
            Evidence::Linked { .. } | Evidence::Unknown { .. } | Evidence::Check { passed: false, .. }
        )
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Target { weight, coeff } => write!(f, "target {weight} (coefficient {coeff})"),
            Evidence::Dominated { weight, coeff, certified, covered_by } => {
                if *certified {
                    write!(f, "{weight} ×{coeff}: below the target and certified")
                } else if covered_by.is_empty() {
                    write!(f, "{weight} ×{coeff}: below the target, no fundamental weight beneath it")
                } else {
                    write!(
                        f,
                        "{weight} ×{coeff}: below the target, covered by certified {}",
                        covered_by.join(", ")
                    )
                }
            }
            Evidence::Unlinked { weight, coeff, alcove_target, alcove_weight } => write!(
                f,
                "{weight} ×{coeff}: unlinked (alcove points {alcove_weight} vs {alcove_target})"
            ),
            Evidence::Linked { weight, coeff, alcove } => write!(
                f,
                "FAIL {weight} ×{coeff}: linked to the target (alcove point {alcove}) and not dominated by a certified weight"
            ),
            Evidence::Layer { weight, coeff, dim, reasons } => {
                write!(f, "layer {weight} ×{coeff} (dim {dim}): irreducible by ")?;
                write_reasons(f, reasons)
            }
            Evidence::Unknown { weight, coeff, component } => write!(
                f,
                "FAIL layer {weight} ×{coeff}: irreducibility of factor {} unknown",
                component + 1
            ),
            Evidence::Pairing { levi, a1, coeff, reasons } => {
                write!(f, "Levi weight {levi} pairs with A1 weight {a1} ×{coeff}; A1 factor irreducible by ")?;
                write_reasons(f, reasons)
            }
            Evidence::Check { name, passed, detail } => {
                write!(f, "{} {name}: {detail}", if *passed { "ok" } else { "FAIL" })
            }
            Evidence::External { claim } => write!(f, "EXTERNAL {claim}"),
            Evidence::Note { text } => f.write_str(text),
        }
    }
}

fn write_reasons(f: &mut fmt::Formatter<'_>, reasons: &[IrreducibilityReason]) -> fmt::Result {
    let parts: Vec<String> = reasons.iter().map(|r| r.to_string()).collect();
    f.write_str(&parts.join(" + "))
}

/// A certificate (or failed attempt) for one dominant weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertStep {
    /// Display form of the weight, or a description when the step covers all weights at once.
    pub weight: String,
    #[serde(skip)]
    pub key: Option<Weight>,
    pub strategy: String,
    pub status: StepStatus,
    pub evidence: Vec<Evidence>,
    /// Earlier certified weights this step relies on.
    pub dependencies: Vec<String>,
}

impl CertStep {
    /// Status follows from the evidence: any failure fails, any external claim downgrades.
    pub fn from_evidence(
        key: Option<Weight>,
        weight: String,
        strategy: String,
        evidence: Vec<Evidence>,
        dependencies: Vec<String>,
    ) -> CertStep {
        let status = if evidence.iter().any(Evidence::is_failure) {
            StepStatus::Failed
        } else if evidence.iter().any(|e| matches!(e, Evidence::External { .. })) {
            StepStatus::CertifiedWithExternal
        } else {
            StepStatus::Certified
        };
        CertStep {
            weight,
            key,
            strategy,
            status,
            evidence,
            dependencies,
        }
    }

    pub(crate) fn for_weight(lam: &Weight, strategy: String, evidence: Vec<Evidence>, deps: Vec<String>) -> CertStep {
        CertStep::from_evidence(Some(lam.clone()), lam.to_string(), strategy, evidence, deps)
    }

    pub(crate) fn failed(key: Option<Weight>, weight: String, strategy: String, why: String) -> CertStep {
        CertStep {
            weight,
            key,
            strategy,
            status: StepStatus::Failed,
            evidence: vec![Evidence::check("computation", false, why)],
            dependencies: Vec::new(),
        }
    }

    pub fn failures(&self) -> Vec<&Evidence> {
        self.evidence.iter().filter(|e| e.is_failure()).collect()
    }
}

/// Dominant weights certified so far, in the order they were certified. The zero weight is always present.
#[derive(Debug, Clone)]
pub struct CertSet {
    rs: Arc<RootSystem>,
    steps: Vec<CertStep>,
    index: BTreeMap<Weight, usize>,
    base: BTreeSet<Weight>,
}

impl CertSet {
    pub fn new(rs: Arc<RootSystem>) -> CertSet {
        let base = BTreeSet::from([rs.zero()]);
        CertSet {
            rs,
            steps: Vec::new(),
            index: BTreeMap::new(),
            base,
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn contains(&self, lam: &Weight) -> bool {
        self.base.contains(lam) || self.index.contains_key(lam)
    }

    /// Records a certified step; failed or skipped steps are ignored.
    pub fn insert(&mut self, step: CertStep) -> bool {
        match &step.key {
            Some(k) if step.status.is_certified() && !self.contains(k) => {
                self.index.insert(k.clone(), self.steps.len());
                self.steps.push(step);
                true
            }
            _ => false,
        }
    }

    pub fn get(&self, lam: &Weight) -> Option<&CertStep> {
        self.index.get(lam).map(|&i| &self.steps[i])
    }

    pub fn steps(&self) -> &[CertStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len() + self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// If every fundamental weight `≤ μ` is certified, those weights; otherwise `None`.
    pub fn covered(&self, mu: &Weight) -> Result<Option<Vec<Weight>>> {
        let mut below = Vec::new();
        for i in 1..=self.rs.rank() {
            let w = self.rs.fundamental(i);
            if self.rs.dominance_leq(&w, mu)? {
                if !self.contains(&w) {
                    return Ok(None);
                }
                below.push(w);
            }
        }
        Ok(Some(below))
    }

    /// Every dependency was certified by an earlier step, so the steps form a DAG in certification order.
    pub fn is_acyclic(&self) -> bool {
        let zero = self.rs.zero().to_string();
        self.steps.iter().enumerate().all(|(i, s)| {
            s.dependencies.iter().all(|d| {
                *d == zero || self.steps[..i].iter().any(|t| t.weight == *d)
            })
        })
    }
}
