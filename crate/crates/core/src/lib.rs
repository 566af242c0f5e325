//! Computational Lie theory for certifying good-filtration restriction.
//!
//! The crate is layered bottom-up: [`rootdata`] (root systems and Weyl groups),
//! [`charcalc`] (Weyl characters), [`branching`] (restriction to subgroups),
//! [`modular`] (linkage, alcoves, Jantzen sums) and [`donkin`] (the certificate engine).

pub mod error;
pub mod modular;
pub mod branching;
pub mod charcalc;
pub mod donkin;
pub mod rootdata;

pub use error::{Error, Result};
