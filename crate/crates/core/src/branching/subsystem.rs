use std::collections::BTreeSet;
use std::sync::Arc;

use super::embedding::{root_data, Embedding, Provenance};
use crate::error::{Error, Result};
use crate::rootdata::{Family, RootSystem, RootSystemSpec, SimpleType};

/// Closure of a set of roots (simple-root coordinates) under the reflections they define.
pub fn reflection_closure(rs: &RootSystem, generators: &[Vec<i32>]) -> Result<BTreeSet<Vec<i32>>> {
    let mut set: BTreeSet<Vec<i32>> = BTreeSet::new();
    for g in generators {
        if root_data(rs, g).is_none() {
            return Err(Error::Precondition(format!("{g:?} is not a root of {}", rs.spec())));
        }
        set.insert(g.clone());
        set.insert(g.iter().map(|x| -x).collect());
    }
    loop {
        let current: Vec<Vec<i32>> = set.iter().cloned().collect();
        let data: Vec<_> = current.iter().map(|r| root_data(rs, r).expect("closed set of roots")).collect();
        let mut grew = false;
        for (a, da) in current.iter().zip(&data) {
            for (b, db) in current.iter().zip(&data) {
                let k: i32 = db.weight_form.iter().zip(&da.coroot).map(|(x, y)| x * y).sum();
                if k == 0 {
                    continue;
                }
                let r: Vec<i32> = b.iter().zip(a).map(|(x, y)| x - k * y).collect();
                if set.insert(r) {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(set);
        }
    }
}

/// Simple roots of `Φ_H ∩ Φ⁺`: positive roots of the subsystem that are not a sum of two others.
pub fn simple_roots_of(closure: &BTreeSet<Vec<i32>>) -> Vec<Vec<i32>> {
    let pos: Vec<&Vec<i32>> = closure.iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
    let pos_set: BTreeSet<&Vec<i32>> = pos.iter().copied().collect();
    pos.iter()
        .filter(|r| {
            !pos.iter().any(|a| {
                let diff: Vec<i32> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .map(|r| (*r).clone())
        .collect()
}

/// `C[j][k] = ⟨β_j, β_k∨⟩` for a list of roots.
pub fn cartan_of(rs: &RootSystem, roots: &[Vec<i32>]) -> Result<Vec<Vec<i32>>> {
    let data: Vec<_> = roots
        .iter()
        .map(|r| root_data(rs, r).ok_or_else(|| Error::Precondition(format!("{r:?} is not a root"))))
        .collect::<Result<_>>()?;
    Ok(data
        .iter()
        .map(|dj| {
            data.iter()
                .map(|dk| dj.weight_form.iter().zip(&dk.coroot).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect())
}

/// All orderings `π` with `found[π(j)][π(k)] = target[j][k]`, lexicographically.
pub fn cartan_isomorphisms(found: &[Vec<i32>], target: &[Vec<i32>], limit: usize) -> Vec<Vec<usize>> {
    fn rec(
        found: &[Vec<i32>],
        target: &[Vec<i32>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let j = perm.len();
        if j == target.len() {
            out.push(perm.clone());
            return;
        }
        for cand in 0..found.len() {
            if used[cand] || found[cand][cand] != target[j][j] {
                continue;
            }
            let ok = perm.iter().enumerate().all(|(k, &pk)| {
                found[cand][pk] == target[j][k] && found[pk][cand] == target[k][j]
            });
            if ok {
                used[cand] = true;
                perm.push(cand);
                rec(found, target, perm, used, out, limit);
                perm.pop();
                used[cand] = false;
            }
        }
    }
    if found.len() != target.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(found, target, &mut Vec::new(), &mut vec![false; found.len()], &mut out, limit);
    out
}

/// Embedding of the subsystem generated by `generators`, with simple roots ordered to match `target`.
///
/// `choice` selects among the diagram automorphisms of the target (0 = lexicographically first).
pub fn subsystem_embedding(
    name: &str,
    source: &Arc<RootSystem>,
    target: &Arc<RootSystem>,
    generators: &[Vec<i32>],
    choice: usize,
) -> Result<Embedding> {
    let closure = reflection_closure(source, generators)?;
    let simple = simple_roots_of(&closure);
    let found = cartan_of(source, &simple)?;
    let perms = cartan_isomorphisms(&found, target.cartan(), choice + 1);
    let perm = perms.get(choice).ok_or_else(|| Error::Embedding {
        name: name.into(),
        reason: format!(
            "the generated subsystem has Cartan matrix {found:?}, not of type {}",
            target.spec()
        ),
    })?;
    let roots: Vec<Vec<i32>> = perm.iter().map(|&i| simple[i].clone()).collect();
    let matrix = roots
        .iter()
        .map(|r| root_data(source, r).expect("root").coroot)
        .collect();
    Embedding::validated(
        name,
        Arc::clone(source),
        Arc::clone(target),
        matrix,
        Provenance::SubsystemRoots(roots),
    )
}

/// Type of an irreducible Cartan matrix given in any node order.
fn classify_component(cartan: &[Vec<i32>], nodes: &[usize]) -> Result<SimpleType> {
    let n = nodes.len();
    let sub: Vec<Vec<i32>> = nodes
        .iter()
        .map(|&a| nodes.iter().map(|&b| cartan[a][b]).collect())
        .collect();
    let mut candidates = vec![SimpleType::new(Family::A, n)];
    if n >= 2 {
        candidates.push(SimpleType::new(Family::B, n));
        candidates.push(SimpleType::new(Family::C, n));
    }
    if n >= 4 {
        candidates.push(SimpleType::new(Family::D, n));
    }
    if (6..=8).contains(&n) {
        candidates.push(SimpleType::new(Family::E, n));
    }
    if n == 4 {
        candidates.push(SimpleType::new(Family::F, 4));
    }
    if n == 2 {
        candidates.push(SimpleType::new(Family::G, 2));
    }
    for cand in candidates.into_iter().flatten() {
        let rs = RootSystem::build(&RootSystemSpec::new(vec![cand])?)?;
        if !cartan_isomorphisms(&sub, rs.cartan(), 1).is_empty() {
            return Ok(cand);
        }
    }
    Err(Error::Unsupported(format!("Cartan matrix {sub:?}")))
}

/// Connected components of a Cartan matrix, ordered by smallest node.
fn components(cartan: &[Vec<i32>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut nodes = Vec::new();
        comp[start] = id;
        while let Some(a) = stack.pop() {
            nodes.push(a);
            for b in 0..n {
                if comp[b] == usize::MAX && cartan[a][b] != 0 {
                    comp[b] = id;
                    stack.push(b);
                }
            }
        }
        nodes.sort();
        out.push(nodes);
    }
    out
}

/// Standard Levi subgroup on a set of simple-root nodes (1-based).
pub fn levi(source: &Arc<RootSystem>, nodes: &[usize]) -> Result<Embedding> {
    let mut nodes: Vec<usize> = nodes.to_vec();
    nodes.sort();
    nodes.dedup();
    if nodes.is_empty() || nodes.iter().any(|&i| i == 0 || i > source.rank()) {
        return Err(Error::Precondition(format!(
            "Levi nodes must be a nonempty subset of 1..={}",
            source.rank()
        )));
    }
    let sub: Vec<Vec<i32>> = nodes
        .iter()
        .map(|&a| nodes.iter().map(|&b| source.cartan()[a - 1][b - 1]).collect())
        .collect();
    let types = components(&sub)
        .iter()
        .map(|c| classify_component(&sub, c))
        .collect::<Result<Vec<_>>>()?;
    let target = RootSystem::build(&RootSystemSpec::new(types)?)?;
    let gens: Vec<Vec<i32>> = nodes
        .iter()
        .map(|&i| (1..=source.rank()).map(|k| (k == i) as i32).collect())
        .collect();
    let label = nodes.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    subsystem_embedding(
        &format!("Levi({},{label})", source.spec()),
        source,
        &target,
        &gens,
        0,
    )
}
