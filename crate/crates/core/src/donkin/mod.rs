//! Certificates that restriction to a subgroup preserves good filtrations.
//!
//! The engine works up the dominance order over fundamental weights. Each weight is
//! certified by a table row: irreducible layers of the restriction, the socle argument
//! for a Levi factor times `A1`, an auxiliary module built from weights already certified,
//! a graph-automorphism twist, or a pair-specific argument. Non-fundamental weights
//! follow from tensor products, which is spot-checked on random samples.

mod cert;
mod engine;
mod recipe;
mod tables;
mod three_pieces;
mod verify;

use std::sync::Arc;

pub use cert::{CertSet, CertStep, Evidence, StepStatus};
pub use engine::{
    induction_check, run_pair, CaseInfo, InductionNote, Report, ReportStatus, RunOptions, RunStats,
};
pub use recipe::{supp_nabla, AuxRecipe};
pub use tables::{strategy_table, PCond, Row, Strategy, StrategyTable};
pub use three_pieces::{
    scaled_sigmas, search_three_pieces, three_pieces_obstruction, verify_three_pieces, Obstruction,
};
pub use verify::{
    verify_aux, verify_e6c4_omega2, verify_irreducible_layers, verify_socle_product, verify_symmetry,
};

use crate::branching::{validate_embedding, Embedding};
use crate::charcalc::CharCalc;
use crate::error::{Error, Result};
use crate::modular::Prime;
use crate::rootdata::RootSystem;

/// A validated embedding and a prime, with character calculators for both groups.
pub struct PairCase {
    embedding: Embedding,
    p: Prime,
    g: CharCalc,
    h: CharCalc,
}

impl PairCase {
    pub fn new(embedding: Embedding, p: Prime) -> Result<PairCase> {
        let g = CharCalc::new(Arc::clone(embedding.source()));
        let h = CharCalc::new(Arc::clone(embedding.target()));
        PairCase::with_calcs(embedding, p, g, h)
    }

    /// Uses the given calculators (for example backed by a persistent store).
    pub fn with_calcs(embedding: Embedding, p: Prime, g: CharCalc, h: CharCalc) -> Result<PairCase> {
        if let Some(f) = validate_embedding(&embedding).failures().first() {
            return Err(Error::Embedding {
                name: embedding.name.clone(),
                reason: format!("{}: {}", f.name, f.detail),
            });
        }
        for (calc, rs) in [(&g, embedding.source()), (&h, embedding.target())] {
            if calc.system().tag() != rs.tag() {
                return Err(Error::Mismatch {
                    expected: rs.tag().to_string(),
                    found: calc.system().tag().to_string(),
                });
            }
        }
        Ok(PairCase { embedding, p, g, h })
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn name(&self) -> &str {
        &self.embedding.name
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn source(&self) -> &Arc<RootSystem> {
        self.embedding.source()
    }

    pub fn target(&self) -> &Arc<RootSystem> {
        self.embedding.target()
    }

    /// Calculator for the ambient group.
    pub fn g(&self) -> &CharCalc {
        &self.g
    }

    /// Calculator for the subgroup.
    pub fn h(&self) -> &CharCalc {
        &self.h
    }
}

#[cfg(test)]
mod tests;
