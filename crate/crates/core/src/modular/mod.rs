//! Characteristic-p tools: the dot action of the affine Weyl group, linkage,
//! the strong linkage relation, the Jantzen sum formula and sufficient
//! criteria for a dual Weyl module to be irreducible.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::charcalc::{dominant_weights_of, WeylSum};
use crate::error::{Error, Result};
use crate::rootdata::{Coords, Root, RootSystem, Weight};

/// A prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Prime> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn int(self) -> i64 {
        self.0 as i64
    }

    /// Exponent of `p` in `m` (`m ≠ 0`).
    pub fn valuation(self, mut m: i64) -> u32 {
        let p = self.int();
        let mut v = 0;
        while m != 0 && m % p == 0 {
            m /= p;
            v += 1;
        }
        v
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Signed Weyl-character sums, such as Jantzen sums.
pub type VirtualWeylSum = WeylSum;

/// `s_{β,mp}·λ = λ − (⟨λ+ρ, β∨⟩ − mp)β`.
pub fn affine_reflect(rs: &RootSystem, beta: &Root, m: i64, p: Prime, lam: &Weight) -> Result<Weight> {
    rs.check(lam)?;
    rs.check_root(beta)?;
    let mut v: Coords = lam.coords().iter().copied().collect();
    affine_reflect_raw(beta, m * p.int(), &mut v);
    rs.weight(&v)
}

fn affine_reflect_raw(beta: &Root, mp: i64, lam: &mut [i32]) {
    let n = beta.pair(lam) + beta.coheight() as i64;
    let k = (n - mp) as i32;
    for (x, b) in lam.iter_mut().zip(beta.weight_form.coords()) {
        *x -= k * b;
    }
}

/// Walks `ν = λ+ρ` into the closed fundamental alcove; returns the point reached.
fn alcove_point(rs: &RootSystem, p: Prime, lam: &[i32]) -> Coords {
    let mut v: Coords = lam.iter().map(|x| x + 1).collect();
    let p = p.int();
    loop {
        rs.to_dominant_raw(&mut v);
        let mut moved = false;
        for c in 0..rs.components().len() {
            let a0 = rs.highest_short_root(c);
            let n = a0.pair(&v);
            if n > p {
                let k = (n - p) as i32;
                for (x, b) in v.iter_mut().zip(a0.weight_form.coords()) {
                    *x -= k * b;
                }
                moved = true;
            }
        }
        if !moved {
            return v;
        }
    }
}

/// Representative of the dot orbit `W_p·λ` in the closure of the bottom alcove.
pub fn alcove_rep(rs: &RootSystem, p: Prime, lam: &Weight) -> Result<Weight> {
    rs.check(lam)?;
    let v = alcove_point(rs, p, lam.coords());
    let shifted: Vec<i32> = v.iter().map(|x| x - 1).collect();
    rs.weight(&shifted)
}

/// Same `W_p`-dot orbit.
pub fn linked(rs: &RootSystem, p: Prime, lam: &Weight, mu: &Weight) -> Result<bool> {
    rs.check(lam)?;
    rs.check(mu)?;
    Ok(alcove_point(rs, p, lam.coords()) == alcove_point(rs, p, mu.coords()))
}

/// Strong linkage `μ ↑ λ`: a chain of affine reflections from `μ` to `λ`, each step going up.
pub fn up_arrow(rs: &RootSystem, p: Prime, mu: &Weight, lam: &Weight) -> Result<bool> {
    rs.check(mu)?;
    rs.check(lam)?;
    if mu == lam {
        return Ok(true);
    }
    if !rs.dominance_leq(mu, lam)? || !rs.same_root_lattice_coset(mu, lam)? {
        return Ok(false);
    }
    let target: Coords = lam.coords().iter().copied().collect();
    let start: Coords = mu.coords().iter().copied().collect();
    let mut seen: HashSet<Coords> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let p = p.int();
    while let Some(nu) = queue.pop_front() {
        for beta in rs.positive_roots() {
            let n = beta.pair(&nu) + beta.coheight() as i64;
            // s_{β,mp}·ν = ν + (mp − n)β; going up needs mp > n
            let mut m = n.div_euclid(p) + 1;
            loop {
                let k = (m * p - n) as i32;
                let next: Coords = nu
                    .iter()
                    .zip(beta.weight_form.coords())
                    .map(|(x, b)| x + k * b)
                    .collect();
                if !rs.cone_leq_raw(&next, &target) {
                    break;
                }
                if next == target {
                    return Ok(true);
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
                m += 1;
            }
        }
    }
    Ok(false)
}

fn require_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    rs.check(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(())
}

/// `Σ_{β>0} Σ_{0<mp<⟨λ+ρ,β∨⟩} ν_p(mp) χ(s_{β,mp}·λ)`.
pub fn jantzen_sum(rs: &Arc<RootSystem>, p: Prime, lam: &Weight) -> Result<VirtualWeylSum> {
    require_dominant(rs, lam)?;
    let mut out = WeylSum::zero(Arc::clone(rs));
    let pp = p.int();
    let mut v: Coords = Coords::new();
    for beta in rs.positive_roots() {
        let n = beta.pair(lam.coords()) + beta.coheight() as i64;
        let mut mp = pp;
        while mp < n {
            v.clear();
            v.extend_from_slice(lam.coords());
            affine_reflect_raw(beta, mp, &mut v);
            if let Some((sign, dom)) = rs.reduce_rho_raw(&v) {
                let c = BigInt::from(sign as i64 * p.valuation(mp) as i64);
                out.add_term(rs.weight(&dom)?, c)?;
            }
            mp += pp;
        }
    }
    Ok(out)
}

/// `⟨λ+ρ, β∨⟩ ≤ p` for every positive root.
pub fn bottom_alcove(rs: &RootSystem, p: Prime, lam: &Weight) -> Result<bool> {
    require_dominant(rs, lam)?;
    let shifted: Vec<i32> = lam.coords().iter().map(|x| x + 1).collect();
    Ok(rs
        .positive_roots()
        .iter()
        .all(|b| b.pair(&shifted) <= p.int()))
}

/// No other dominant weight of `∇(λ)` is linked to `λ`.
pub fn irreducible_by_linkage(rs: &RootSystem, p: Prime, lam: &Weight) -> Result<bool> {
    require_dominant(rs, lam)?;
    let own = alcove_point(rs, p, lam.coords());
    for mu in dominant_weights_of(rs, lam)? {
        if mu != *lam && alcove_point(rs, p, mu.coords()) == own {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why a simple factor of `∇(λ)` is known to be irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IrreducibilityReason {
    BottomAlcove,
    Linkage,
    JantzenZero,
}

impl fmt::Display for IrreducibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibilityReason::BottomAlcove => "bottom alcove",
            IrreducibilityReason::Linkage => "linkage",
            IrreducibilityReason::JantzenZero => "Jantzen sum zero",
        })
    }
}

/// Outcome of [`nabla_irreducible`]; reducibility is never asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// One reason per simple component.
    Yes(Vec<IrreducibilityReason>),
    /// The component (0-based) whose factor could not be certified.
    Unknown { component: usize, weight: Weight },
}

impl Irreducibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Irreducibility::Yes(_))
    }
}

/// Certifies irreducibility of `∇(λ)` componentwise: bottom alcove, then linkage, then a vanishing Jantzen sum.
pub fn nabla_irreducible(rs: &Arc<RootSystem>, p: Prime, lam: &Weight) -> Result<Irreducibility> {
    require_dominant(rs, lam)?;
    let mut reasons = Vec::new();
    for (c, (sys, part)) in rs.component_systems().iter().zip(rs.split(lam)).enumerate() {
        let reason = if bottom_alcove(sys, p, &part)? {
            IrreducibilityReason::BottomAlcove
        } else if irreducible_by_linkage(sys, p, &part)? {
            IrreducibilityReason::Linkage
        } else if jantzen_sum(sys, p, &part)?.is_empty() {
            IrreducibilityReason::JantzenZero
        } else {
            return Ok(Irreducibility::Unknown { component: c, weight: part });
        };
        reasons.push(reason);
    }
    Ok(Irreducibility::Yes(reasons))
}

#[cfg(test)]
mod tests;
