//! Characters of Weyl modules.
//!
//! Characters are stored by dominant representatives. Weight multiplicities come
//! from Freudenthal's recursion; products, Adams operations and exterior or
//! symmetric powers are decomposed into Weyl characters with the Brauer–Klimyk
//! rule, expanding one factor orbit by orbit.

mod calc;
mod character;
mod freudenthal;

pub use calc::{
    adams, alt_power, decompose, dim_of, sym_power, tensor, to_weights, weyl_sum_of, CalcStats,
    CharCalc, CharacterStore,
};
pub use character::{DominantCharacter, WeylSum};
pub use freudenthal::{dominant_weights_of, freudenthal, weyl_dim};
