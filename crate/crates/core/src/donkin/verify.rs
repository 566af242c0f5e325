use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::cert::{CertSet, CertStep, Evidence};
use super::recipe::{supp_nabla, weight_symbol, AuxRecipe};
use super::PairCase;
use crate::branching::{branch_with, cartan_isomorphisms, restrict_character_capped};
use crate::charcalc::WeylSum;
use crate::error::{Error, Result};
use crate::modular::{alcove_rep, jantzen_sum, nabla_irreducible, Irreducibility};
use crate::rootdata::{Family, RootSystem, Weight};

pub(crate) const LAYERS: &str = "layers";
pub(crate) const SOCLE: &str = "socle";
pub(crate) const ADJOINT_E6C4: &str = "adjoint-e6c4";

fn require_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    rs.check(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(())
}

fn push_dep(deps: &mut Vec<String>, w: &Weight) {
    let s = w.to_string();
    if !deps.contains(&s) {
        deps.push(s);
    }
}

/// Certifies `λ` from an auxiliary module `M` whose other good-filtration layers are
/// smaller and certified, or lie in a different linkage class.
pub fn verify_aux(case: &PairCase, lam: &Weight, recipe: &AuxRecipe, certified: &CertSet) -> Result<CertStep> {
    let rs = case.source();
    require_dominant(rs, lam)?;
    recipe.check_prime(case.p())?;
    let mut deps = Vec::new();
    for leaf in recipe.leaves() {
        if !certified.contains(leaf) {
            return Err(Error::Precondition(format!(
                "recipe {recipe} uses {leaf}, which is not certified"
            )));
        }
        push_dep(&mut deps, leaf);
    }
    let supp = supp_nabla(case.g(), recipe)?;
    let own = supp.coeff(lam);
    if !own.is_positive() {
        return Err(Error::Precondition(format!("{lam} does not occur in {recipe}")));
    }
    let p = case.p();
    let target_alcove = alcove_rep(rs, p, lam)?;
    let mut evidence = vec![Evidence::Target {
        weight: lam.to_string(),
        coeff: own.to_string(),
    }];
    for (mu, c) in supp.sorted() {
        if mu == lam {
            continue;
        }
        if rs.dominance_lt(mu, lam)? {
            if certified.contains(mu) {
                push_dep(&mut deps, mu);
                evidence.push(Evidence::Dominated {
                    weight: mu.to_string(),
                    coeff: c.to_string(),
                    certified: true,
                    covered_by: Vec::new(),
                });
                continue;
            }
            if let Some(below) = certified.covered(mu)? {
                below.iter().for_each(|w| push_dep(&mut deps, w));
                evidence.push(Evidence::Dominated {
                    weight: mu.to_string(),
                    coeff: c.to_string(),
                    certified: false,
                    covered_by: below.iter().map(weight_symbol).collect(),
                });
                continue;
            }
        }
        let a = alcove_rep(rs, p, mu)?;
        if a != target_alcove {
            evidence.push(Evidence::Unlinked {
                weight: mu.to_string(),
                coeff: c.to_string(),
                alcove_target: target_alcove.to_string(),
                alcove_weight: a.to_string(),
            });
        } else {
            evidence.push(Evidence::Linked {
                weight: mu.to_string(),
                coeff: c.to_string(),
                alcove: a.to_string(),
            });
        }
    }
    Ok(CertStep::for_weight(lam, format!("aux {recipe}"), evidence, deps))
}

fn layer_evidence(case: &PairCase, mu: &Weight, c: &BigInt) -> Result<Evidence> {
    Ok(match nabla_irreducible(case.target(), case.p(), mu)? {
        Irreducibility::Yes(reasons) => Evidence::Layer {
            weight: mu.to_string(),
            coeff: c.to_string(),
            dim: case.h().weyl_dim(mu)?.to_string(),
            reasons,
        },
        Irreducibility::Unknown { component, .. } => Evidence::Unknown {
            weight: mu.to_string(),
            coeff: c.to_string(),
            component,
        },
    })
}

fn branch_note(case: &PairCase, lam: &Weight, s: &WeylSum) -> Result<Evidence> {
    Ok(Evidence::note(format!(
        "restriction of ∇({lam}) has dimension {} and {} distinct layers",
        case.h().dim_of(s)?,
        s.len()
    )))
}

/// Certifies `λ` when every layer of `res ∇_G(λ)` is an irreducible `∇_H(μ)`.
pub fn verify_irreducible_layers(case: &PairCase, lam: &Weight) -> Result<CertStep> {
    require_dominant(case.source(), lam)?;
    let s = branch_with(case.embedding(), case.g(), case.h(), lam)?;
    let mut evidence = vec![branch_note(case, lam, &s)?];
    for (mu, c) in s.sorted() {
        evidence.push(layer_evidence(case, mu, c)?);
    }
    Ok(CertStep::for_weight(lam, LAYERS.into(), evidence, Vec::new()))
}

/// Certifies `λ` for `H = K × F` with `F` of type `A1` and `K` a Levi factor: every `K`-weight of
/// the restriction must pair with a single `F`-weight, with multiplicity one, whose `∇_F` is irreducible.
pub fn verify_socle_product(case: &PairCase, lam: &Weight) -> Result<CertStep> {
    require_dominant(case.source(), lam)?;
    let h = case.target();
    let comps = h.components();
    let last = comps.last().expect("nonempty system");
    if comps.len() < 2 || last.kind.family != Family::A || last.kind.rank != 1 {
        return Err(Error::Precondition(format!(
            "socle argument needs a last factor of type A1, target is {}",
            h.spec()
        )));
    }
    let cut = last.offset;
    let f_rs = h.component_systems().pop().expect("nonempty system");
    let s = branch_with(case.embedding(), case.g(), case.h(), lam)?;
    let mut groups: BTreeMap<Vec<i32>, Vec<(i32, BigInt)>> = BTreeMap::new();
    for (mu, c) in s.iter() {
        let c_ = mu.coords();
        groups.entry(c_[..cut].to_vec()).or_default().push((c_[cut], c.clone()));
    }
    let mut evidence = vec![
        branch_note(case, lam, &s)?,
        Evidence::note("the Levi factor forms a Donkin pair with the ambient group (Levi subgroup case)"),
    ];
    for (levi, partners) in groups.iter().rev() {
        let levi_text = format!("{levi:?}").replace(' ', "");
        if partners.len() != 1 {
            let list: Vec<String> = partners.iter().map(|(a, c)| format!("{a}×{c}")).collect();
            evidence.push(Evidence::check(
                "unique A1 partner",
                false,
                format!("Levi weight {levi_text} occurs with A1 weights {}", list.join(", ")),
            ));
            continue;
        }
        let (a1, c) = &partners[0];
        if !c.is_one() {
            evidence.push(Evidence::check(
                "multiplicity one",
                false,
                format!("Levi weight {levi_text} with A1 weight {a1} occurs {c} times"),
            ));
            continue;
        }
        let a1w = f_rs.weight(&[*a1])?;
        match nabla_irreducible(&f_rs, case.p(), &a1w)? {
            Irreducibility::Yes(reasons) => evidence.push(Evidence::Pairing {
                levi: levi_text,
                a1: a1.to_string(),
                coeff: c.to_string(),
                reasons,
            }),
            Irreducibility::Unknown { .. } => evidence.push(Evidence::Unknown {
                weight: a1w.to_string(),
                coeff: c.to_string(),
                component: comps.len() - 1,
            }),
        }
    }
    Ok(CertStep::for_weight(lam, SOCLE.into(), evidence, Vec::new()))
}

/// Index `j` with `star(ϖ_i) = ϖ_j`, for each `i` (0-based).
fn star_permutation(rs: &RootSystem) -> Result<Vec<usize>> {
    (1..=rs.rank())
        .map(|i| {
            let s = rs.star(&rs.fundamental(i))?;
            s.coords()
                .iter()
                .position(|&x| x == 1)
                .ok_or_else(|| Error::Precondition(format!("star of ϖ{i} is not fundamental")))
        })
        .collect()
}

/// Certifies `λ = star(ϖ_source)` from `ϖ_source`, using the graph automorphism `−w0` of `G`.
///
/// Checks that the restriction matrix intertwines that automorphism with a diagram
/// automorphism of `H`, so the twist of `∇_G(ϖ_source)` restricts to a twist of its restriction.
pub fn verify_symmetry(case: &PairCase, lam: &Weight, source: usize, certified: &CertSet) -> Result<CertStep> {
    let g = case.source();
    require_dominant(g, lam)?;
    if source == 0 || source > g.rank() {
        return Err(Error::Precondition(format!("no fundamental weight ϖ{source}")));
    }
    let src = g.fundamental(source);
    if !certified.contains(&src) {
        return Err(Error::Precondition(format!("ϖ{source} is not certified")));
    }
    let strategy = format!("symmetry w{source}");
    let mut evidence = Vec::new();
    let star = g.star(lam)?;
    evidence.push(Evidence::check(
        "dual weight",
        star == src,
        format!("star({lam}) = {star}, expected {src}"),
    ));
    let tau = star_permutation(g)?;
    let m = case.embedding().matrix();
    let h = case.target();
    let autos = cartan_isomorphisms(h.cartan(), h.cartan(), usize::MAX);
    let pi = autos.iter().find(|pi| {
        (0..g.rank()).all(|i| (0..h.rank()).all(|j| m[pi[j]][tau[i]] == m[j][i]))
    });
    let show = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
    evidence.push(match pi {
        Some(pi) => Evidence::check(
            "restriction intertwines graph automorphism",
            true,
            format!("G nodes ↦ [{}], H nodes ↦ [{}]", show(&tau), show(pi)),
        ),
        None => Evidence::check(
            "restriction intertwines graph automorphism",
            false,
            format!("no diagram automorphism of {} matches G nodes ↦ [{}]", h.spec(), show(&tau)),
        ),
    });
    Ok(CertStep::for_weight(lam, strategy, evidence, vec![src.to_string()]))
}

/// The adjoint module of `E6` restricted to `C4`: a submodule `∇(2ϖ1)` whose quotient is
/// irreducible, or for `p = 3` has one trivial factor; the absence of invariants is recorded as external.
pub fn verify_e6c4_omega2(case: &PairCase) -> Result<CertStep> {
    let g = case.source();
    let h = case.target();
    let is = |rs: &RootSystem, f: Family, n: usize| {
        rs.components().len() == 1 && rs.components()[0].kind.family == f && rs.components()[0].kind.rank == n
    };
    if !is(g, Family::E, 6) || !is(h, Family::C, 4) {
        return Err(Error::Precondition(format!(
            "adjoint argument is for E6 ⊃ C4, got {} ⊃ {}",
            g.spec(),
            h.spec()
        )));
    }
    let p = case.p();
    if p.get() == 2 {
        return Err(Error::Precondition("adjoint argument needs p > 2".into()));
    }
    let lam = g.fundamental(2);
    let ch = case.g().freudenthal(&lam)?;
    let res = restrict_character_capped(case.embedding(), &ch, case.g().cap())?;
    let zero = res.get(&h.zero());
    let mut evidence = vec![Evidence::check(
        "zero weight space",
        zero == BigInt::from(6),
        format!("restricted adjoint has zero-weight multiplicity {zero}, expected 6"),
    )];
    let s = branch_with(case.embedding(), case.g(), case.h(), &lam)?;
    evidence.push(branch_note(case, &lam, &s)?);
    let sub = h.fundamental(1).scale(2);
    let c = s.coeff(&sub);
    evidence.push(Evidence::check(
        "submodule 2ϖ1",
        c.is_positive(),
        format!("coefficient of {sub} is {c}"),
    ));
    if !c.is_positive() {
        return Ok(CertStep::for_weight(&lam, ADJOINT_E6C4.into(), evidence, Vec::new()));
    }
    evidence.push(layer_evidence(case, &sub, &BigInt::one())?);
    let mut rest = s.clone();
    rest.add_term(sub.clone(), -BigInt::one())?;
    let terms = rest.sorted();
    if terms.len() != 1 || !terms[0].1.is_one() {
        evidence.push(Evidence::check(
            "quotient",
            false,
            format!("quotient by ∇({sub}) is not a single dual Weyl module: {}", rest.to_text().trim()),
        ));
        return Ok(CertStep::for_weight(&lam, ADJOINT_E6C4.into(), evidence, Vec::new()));
    }
    let nu = terms[0].0.clone();
    match nabla_irreducible(h, p, &nu)? {
        Irreducibility::Yes(reasons) => evidence.push(Evidence::Layer {
            weight: nu.to_string(),
            coeff: "1".into(),
            dim: case.h().weyl_dim(&nu)?.to_string(),
            reasons,
        }),
        Irreducibility::Unknown { component, .. } => {
            let trivial = WeylSum::single(Arc::clone(h), h.zero())?;
            let js = jantzen_sum(h, p, &nu)?;
            if p.get() == 3 && js == trivial {
                let total = case.h().dim_of(&s)?;
                let big = case.h().weyl_dim(&sub)?;
                let top = case.h().weyl_dim(&nu)? - 1;
                evidence.push(Evidence::check(
                    "quotient at p = 3",
                    &total - &big - 1 == top,
                    format!(
                        "Jantzen sum of ∇({nu}) is χ(0): factors L({nu}) and k; {total} = {big} + {top} + 1"
                    ),
                ));
            } else {
                evidence.push(Evidence::Unknown {
                    weight: nu.to_string(),
                    coeff: "1".into(),
                    component,
                });
            }
        }
    }
    evidence.push(Evidence::note(
        "no extensions between ∇_H(2ϖ1) and the remaining composition factors",
    ));
    evidence.push(Evidence::External {
        claim: "the restricted adjoint module has no nonzero H-invariant: no nonzero zero-weight vector \
                is killed by the root vectors of the fixed-point Lie algebra (hand computation)"
            .into(),
    });
    Ok(CertStep::for_weight(&lam, ADJOINT_E6C4.into(), evidence, Vec::new()))
}
