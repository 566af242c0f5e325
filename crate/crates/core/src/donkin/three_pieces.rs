use super::cert::{CertStep, Evidence};
use super::PairCase;
use crate::branching::{restrict_weight, Embedding};
use crate::error::{Error, Result};
use crate::modular::{nabla_irreducible, Irreducibility, Prime};
use crate::rootdata::{Coords, Weight};

pub(crate) const THREE_PIECES: &str = "three-pieces";

/// `(p−1)·base` for each of three base weights.
pub fn scaled_sigmas(case: &PairCase, base: &[Coords; 3]) -> Result<[Weight; 3]> {
    let k = case.p().get() as i32 - 1;
    let g = case.source();
    Ok([
        g.weight(base[0].as_slice())?.scale(k),
        g.weight(base[1].as_slice())?.scale(k),
        g.weight(base[2].as_slice())?.scale(k),
    ])
}

fn irreducible(case: &PairCase, mu: &Weight) -> Result<Option<Evidence>> {
    Ok(match nabla_irreducible(case.target(), case.p(), mu)? {
        Irreducibility::Yes(reasons) => Some(Evidence::Layer {
            weight: mu.to_string(),
            coeff: "1".into(),
            dim: case.h().weyl_dim(mu)?.to_string(),
            reasons,
        }),
        Irreducibility::Unknown { .. } => None,
    })
}

/// Checks `σ1+σ2+σ3 = (p−1)ρ_G`, `res(σ1+σ2) = res(σ2+σ3) = (p−1)ρ_H`, and surjectivity of
/// `∇_G(σ1) → ∇_H(res σ1)`.
///
/// Surjectivity holds when `∇_H(res σ1)` is irreducible, or when `∇_H(res ϖ_i)` is irreducible for
/// every `ϖ_i` in the support of `σ1`. Failing both, `external` (if given and `p > 2`) is recorded
/// as an unchecked claim.
pub fn verify_three_pieces(case: &PairCase, sigma: &[Weight; 3], external: Option<&str>) -> Result<CertStep> {
    let g = case.source();
    let h = case.target();
    for s in sigma {
        g.check(s)?;
        if !s.is_dominant() {
            return Err(Error::NotDominant(s.to_string()));
        }
    }
    let k = case.p().get() as i32 - 1;
    let st_g = g.rho().scale(k);
    let st_h = h.rho().scale(k);
    let sum = &(&sigma[0] + &sigma[1]) + &sigma[2];
    let e = case.embedding();
    let r12 = restrict_weight(e, &(&sigma[0] + &sigma[1]))?;
    let r23 = restrict_weight(e, &(&sigma[1] + &sigma[2]))?;
    let mut evidence = vec![
        Evidence::note(format!("σ1 = {}, σ2 = {}, σ3 = {}", sigma[0], sigma[1], sigma[2])),
        Evidence::check("σ1+σ2+σ3 = (p−1)ρ_G", sum == st_g, format!("{sum} vs {st_g}")),
        Evidence::check("res(σ1+σ2) = (p−1)ρ_H", r12 == st_h, format!("{r12} vs {st_h}")),
        Evidence::check("res(σ2+σ3) = (p−1)ρ_H", r23 == st_h, format!("{r23} vs {st_h}")),
    ];
    let label = THREE_PIECES.to_string();
    let weight = "all dominant weights".to_string();
    if evidence.iter().any(Evidence::is_failure) {
        return Ok(CertStep::from_evidence(None, weight, label, evidence, Vec::new()));
    }
    let r1 = restrict_weight(e, &sigma[0])?;
    if let Some(ev) = irreducible(case, &r1)? {
        evidence.push(Evidence::check(
            "surjectivity",
            true,
            format!("∇_H({r1}) is irreducible"),
        ));
        evidence.push(ev);
        return Ok(CertStep::from_evidence(None, weight, label, evidence, Vec::new()));
    }
    let mut parts = Vec::new();
    let mut missing = None;
    for (i, &c) in sigma[0].coords().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let ri = e.image_of_fundamental(i + 1);
        match irreducible(case, &ri)? {
            Some(ev) => parts.push(ev),
            None => {
                missing = Some((i + 1, ri));
                break;
            }
        }
    }
    match (missing, external) {
        (None, _) => {
            evidence.push(Evidence::check(
                "surjectivity",
                true,
                format!(
                    "∇_H({r1}) is not shown irreducible, but ∇_H(res ϖ_i) is for every ϖ_i in the support of σ1; \
                     products of surjections onto dual Weyl modules are surjective"
                ),
            ));
            evidence.extend(parts);
        }
        (Some((i, ri)), Some(claim)) if case.p().get() > 2 => {
            evidence.push(Evidence::note(format!(
                "∇_H({r1}) and ∇_H({ri}) = ∇_H(res ϖ{i}) are not shown irreducible"
            )));
            evidence.push(Evidence::External { claim: claim.to_string() });
        }
        (Some((i, ri)), _) => {
            evidence.push(Evidence::check(
                "surjectivity",
                false,
                format!("neither ∇_H({r1}) nor ∇_H({ri}) = ∇_H(res ϖ{i}) is shown irreducible"),
            ));
        }
    }
    Ok(CertStep::from_evidence(None, weight, label, evidence, Vec::new()))
}

/// Why no `σ1, σ2, σ3` can exist: condition (2) forces `res σ2 = (p−1)(2ρ_H − res ρ_G)`, and a
/// restricted dominant weight cannot have negative coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub res_rho: Weight,
    /// 1-based target node and the coefficient of `res ρ_G` there, which exceeds 2.
    pub node: usize,
    pub coefficient: i32,
}

/// The first target coordinate where `res ρ_G` exceeds `2ρ_H`, if any.
pub fn three_pieces_obstruction(e: &Embedding) -> Result<Option<Obstruction>> {
    let res_rho = restrict_weight(e, e.source().rho())?;
    let hit = res_rho.coords().iter().position(|&c| c > 2);
    Ok(hit.map(|j| Obstruction {
        coefficient: res_rho.coords()[j],
        node: j + 1,
        res_rho: res_rho.clone(),
    }))
}

/// Exhaustive search for dominant `σ1, σ3` with `σ2 = (p−1)ρ_G − σ1 − σ3` dominant meeting conditions (1) and (2).
pub fn search_three_pieces(e: &Embedding, p: Prime) -> Result<Option<[Weight; 3]>> {
    let g = e.source();
    let h = e.target();
    let k = p.get() as i32 - 1;
    let n = g.rank();
    let st_h = h.rho().scale(k);
    let mut s1 = vec![0i32; n];
    let mut s3 = vec![0i32; n];
    loop {
        // σ1, σ3 run over pairs with σ1_i + σ3_i ≤ p−1
        let s2: Vec<i32> = (0..n).map(|i| k - s1[i] - s3[i]).collect();
        if s2.iter().all(|&x| x >= 0) {
            let w1 = g.weight(&s1)?;
            let w2 = g.weight(&s2)?;
            let w3 = g.weight(&s3)?;
            if restrict_weight(e, &(&w1 + &w2))? == st_h && restrict_weight(e, &(&w2 + &w3))? == st_h {
                return Ok(Some([w1, w2, w3]));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            if s3[i] < k - s1[i] {
                s3[i] += 1;
                break;
            }
            s3[i] = 0;
            if s1[i] < k {
                s1[i] += 1;
                break;
            }
            s1[i] = 0;
            i += 1;
        }
    }
}
