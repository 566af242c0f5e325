//! Bourbaki ε-coordinates for the E series.
//!
//! E8 lives in the standard 8-dimensional space; E7 and E6 are the sublattices cut out
//! by the first 7 (resp. 6) simple roots, i.e. the vectors orthogonal to `ε7+ε8`
//! (resp. also to `ε6−ε7`).

use num_rational::Ratio;
use num_traits::Zero;

use super::spec::Family;
use super::system::RootSystem;
use super::weight::{Coords, Weight};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// Simple roots `α1..α8` of E8 in ε-coordinates, doubled to stay integral.
const E8_SIMPLE_DOUBLED: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

/// Simple root `α_i` (1-based) of E6/E7/E8 in ε-coordinates.
pub fn simple_root_epsilon(i: usize) -> [Q; 8] {
    let mut out = [Q::zero(); 8];
    for (k, x) in E8_SIMPLE_DOUBLED[i - 1].iter().enumerate() {
        out[k] = Q::new(*x, 2);
    }
    out
}

fn complement(rank: usize) -> Vec<[i64; 8]> {
    let e7e8 = [0, 0, 0, 0, 0, 0, 1, 1];
    let e6e7 = [0, 0, 0, 0, 0, 1, -1, 0];
    match rank {
        6 => vec![e7e8, e6e7],
        7 => vec![e7e8],
        _ => vec![],
    }
}

/// Converts a vector given in Bourbaki ε-coordinates into fundamental-weight coordinates.
pub fn from_epsilon(rs: &RootSystem, eps: &[Q]) -> Result<Weight> {
    let comps = rs.spec().components();
    if comps.len() != 1 || comps[0].family != Family::E {
        return Err(Error::Unsupported(format!(
            "ε-coordinates are only supported for E6, E7, E8, not {}",
            rs.spec()
        )));
    }
    if eps.len() != 8 {
        return Err(Error::Parse(format!("expected 8 ε-coordinates, got {}", eps.len())));
    }
    if let Some(bad) = eps.iter().find(|q| 6 % q.denom() != 0) {
        return Err(Error::NotInLattice(format!("denominator of {bad} does not divide 6")));
    }
    let rank = comps[0].rank;
    for v in complement(rank) {
        let dot: Q = eps.iter().zip(v).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Err(Error::NotInLattice(format!(
                "vector is not in the span of the E{rank} roots"
            )));
        }
    }
    let mut coords = Coords::new();
    for i in 1..=rank {
        let alpha = simple_root_epsilon(i);
        let dot: Q = eps.iter().zip(alpha.iter()).map(|(a, b)| a * b).sum();
        if !dot.is_integer() {
            return Err(Error::NotInLattice(format!(
                "pairing with α{i} is {dot}, not an integer"
            )));
        }
        coords.push(dot.to_integer() as i32);
    }
    rs.weight(&coords)
}
