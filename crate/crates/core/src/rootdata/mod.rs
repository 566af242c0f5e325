//! Root systems, weights and Weyl-group actions in Bourbaki numbering.
//!
//! Weights are kept in the fundamental-weight basis; simple-root coordinates are a
//! derived view through the inverse Cartan matrix.

mod epsilon;
mod spec;
mod system;
mod weight;

pub use epsilon::{from_epsilon, simple_root_epsilon};
pub use spec::{Family, RootSystemSpec, SimpleType, SystemTag};
pub use system::{Component, RhoReduction, Root, RootSystem, DEFAULT_ORBIT_CAP};
pub use weight::{Coords, Weight};
