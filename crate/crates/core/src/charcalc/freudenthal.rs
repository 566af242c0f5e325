use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::character::DominantCharacter;
use crate::error::{Error, Result};
use crate::rootdata::{Coords, RootSystem, Weight};

fn require_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    rs.check(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(())
}

/// Weyl dimension formula `∏ ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩`.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<BigInt> {
    require_dominant(rs, lam)?;
    Ok(weyl_dim_raw(rs, lam.coords()))
}

pub(crate) fn weyl_dim_raw(rs: &RootSystem, lam: &[i32]) -> BigInt {
    let shifted: Vec<i32> = lam.iter().map(|x| x + 1).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in rs.positive_roots() {
        num *= beta.pair(&shifted);
        den *= beta.coheight();
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Dominant weights of `∇(λ)`: connected from `λ` by subtracting positive roots inside the dominant chamber.
pub fn dominant_weights_of(rs: &RootSystem, lam: &Weight) -> Result<BTreeSet<Weight>> {
    require_dominant(rs, lam)?;
    Ok(dominant_weights_raw(rs, lam.coords())
        .into_iter()
        .map(|c| rs.weight(&c).expect("rank checked"))
        .collect())
}

/// Same set as [`dominant_weights_of`], sorted by decreasing height.
pub(crate) fn dominant_weights_raw(rs: &RootSystem, lam: &[i32]) -> Vec<Coords> {
    let start: Coords = lam.iter().copied().collect();
    let mut seen: HashSet<Coords> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(mu) = stack.pop() {
        for beta in rs.positive_roots() {
            let nu: Coords = mu
                .iter()
                .zip(beta.weight_form.coords())
                .map(|(a, b)| a - b)
                .collect();
            if nu.iter().all(|&x| x >= 0) && !seen.contains(&nu) {
                seen.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<Coords> = seen.into_iter().collect();
    out.sort_by_cached_key(|c| std::cmp::Reverse((rs.height_scaled(c), c.clone())));
    out
}

/// Dominant weight multiplicities of `∇(λ)` by Freudenthal's recursion.
pub fn freudenthal(rs: &Arc<RootSystem>, lam: &Weight) -> Result<DominantCharacter> {
    require_dominant(rs, lam)?;
    let mults = freudenthal_raw(rs, lam.coords())?;
    let entries: BTreeMap<Weight, BigInt> = mults
        .into_iter()
        .map(|(c, m)| (rs.weight(&c).expect("rank checked"), m))
        .collect();
    Ok(DominantCharacter::from_checked(Arc::clone(rs), entries, true))
}

pub(crate) fn freudenthal_raw(rs: &RootSystem, lam: &[i32]) -> Result<HashMap<Coords, BigInt>> {
    let doms = dominant_weights_raw(rs, lam);
    let rank = rs.rank();
    let lam_rho: Vec<i32> = lam.iter().map(|x| x + 1).collect();
    let top = rs.form_scaled(&lam_rho, &lam_rho);
    let mut mults: HashMap<Coords, BigInt> = HashMap::with_capacity(doms.len());
    let mut v: Coords = Coords::with_capacity(rank);
    let mut rep: Coords = Coords::with_capacity(rank);
    for mu in doms {
        if mu.as_slice() == lam {
            mults.insert(mu, BigInt::one());
            continue;
        }
        let mu_rho: Vec<i32> = mu.iter().map(|x| x + 1).collect();
        let gap = top - rs.form_scaled(&mu_rho, &mu_rho);
        let mut sum = BigInt::zero();
        for alpha in rs.positive_roots() {
            let a = alpha.weight_form.coords();
            v.clear();
            v.extend(mu.iter().zip(a).map(|(x, y)| x + y));
            loop {
                rep.clear();
                rep.extend_from_slice(&v);
                rs.to_dominant_raw(&mut rep);
                let m = match mults.get(&rep) {
                    Some(m) => m,
                    None => break,
                };
                sum += m * (2 * rs.form_scaled(&v, a));
                for (x, y) in v.iter_mut().zip(a) {
                    *x += y;
                }
            }
        }
        let (q, r) = sum.div_rem(&BigInt::from(gap));
        if !r.is_zero() || gap <= 0 {
            return Err(Error::InexactDivision(format!(
                "Freudenthal step at {:?} for highest weight {:?}",
                mu.as_slice(),
                lam
            )));
        }
        mults.insert(mu, q);
    }
    Ok(mults)
}
