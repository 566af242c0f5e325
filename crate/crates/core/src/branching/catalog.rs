use std::sync::{Arc, OnceLock};

use super::embedding::{parse_stanzas, validate_embedding, Embedding, Provenance};
use super::subsystem::{levi, subsystem_embedding};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, RootSystemSpec};

/// The nine pairs `(G, H)` with `H` the fixed points of an involution.
pub const PAIRS: [&str; 9] = [
    "E8/D8", "E8/E7A1", "E7/A7", "E7/D6A1", "E6/A5A1", "E6/C4", "E6/F4", "F4/B4", "F4/C3A1",
];

const BUILTIN: &str = include_str!("../../data/embeddings.txt");

fn build(name: &str) -> Result<Arc<RootSystem>> {
    RootSystem::build(&name.parse::<RootSystemSpec>()?)
}

fn unit(rank: usize, i: usize) -> Vec<i32> {
    (1..=rank).map(|k| (k == i) as i32).collect()
}

/// Simple roots `α_i` for the listed nodes, then `α0 = −θ`, where the extended diagram loses one node.
fn extended_generators(rs: &RootSystem, nodes: &[usize], with_lowest: bool) -> Vec<Vec<i32>> {
    let mut gens: Vec<Vec<i32>> = nodes.iter().map(|&i| unit(rs.rank(), i)).collect();
    if with_lowest {
        gens.push(rs.highest_root(0).root_coords.iter().map(|x| -x).collect());
    }
    gens
}

/// Nodes kept when deleting one node of the extended Dynkin diagram of `G`.
fn subsystem_nodes(pair: &str) -> Option<(&'static str, &'static str, Vec<usize>)> {
    Some(match pair {
        "E8/D8" => ("E8", "D8", vec![2, 3, 4, 5, 6, 7, 8]),
        "E8/E7A1" => ("E8", "E7A1", vec![1, 2, 3, 4, 5, 6, 7]),
        "E7/A7" => ("E7", "A7", vec![1, 3, 4, 5, 6, 7]),
        "E7/D6A1" => ("E7", "D6A1", vec![2, 3, 4, 5, 6, 7]),
        "E6/A5A1" => ("E6", "A5A1", vec![1, 3, 4, 5, 6]),
        "F4/B4" => ("F4", "B4", vec![1, 2, 3]),
        "F4/C3A1" => ("F4", "C3A1", vec![2, 3, 4]),
        _ => return None,
    })
}

/// Derives a subsystem pair from the extended diagram; `choice` picks among target diagram automorphisms.
pub fn derive_subsystem(pair: &str, choice: usize) -> Result<Embedding> {
    let (g, h, nodes) = subsystem_nodes(pair).ok_or_else(|| Error::UnknownPair(pair.into()))?;
    let source = build(g)?;
    let target = build(h)?;
    let gens = extended_generators(&source, &nodes, true);
    subsystem_embedding(pair, &source, &target, &gens, choice)
}

fn columns_to_rows(cols: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows).map(|j| cols.iter().map(|c| c[j]).collect()).collect()
}

fn folding(name: &str, g: &str, h: &str, images: Vec<Vec<i32>>) -> Result<Embedding> {
    Embedding::validated(name, build(g)?, build(h)?, columns_to_rows(&images), Provenance::FoldingTable)
}

/// `E6 ⊃ F4`: `res ϖ_i` for `i = 1..6` is `ϖ4, ϖ1, ϖ3, ϖ2, ϖ3, ϖ4`.
pub fn e6_f4() -> Result<Embedding> {
    let f = |i: usize| unit(4, i);
    folding("E6/F4", "E6", "F4", vec![f(4), f(1), f(3), f(2), f(3), f(4)])
}

/// `E6 ⊃ C4`: same torus as `E6 ⊃ F4`, composed with the `F4 → C4` coordinate change
/// `ε1 ↦ f1+f2, ε2 ↦ f1−f2, ε3 ↦ f3+f4, ε4 ↦ f3−f4`.
pub fn e6_c4() -> Result<Embedding> {
    folding(
        "E6/C4",
        "E6",
        "C4",
        vec![
            vec![0, 1, 0, 0],
            vec![2, 0, 0, 0],
            vec![1, 0, 1, 0],
            vec![2, 0, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 0],
        ],
    )
}

/// `A_{2n} ⊃ B_n` from the diagram involution: `ϖ_i, ϖ_{2n+1−i} ↦ ϖ_i` for `i < n`, both middle nodes `↦ 2ϖ_n`.
pub fn a_even_b(n: usize) -> Result<Embedding> {
    if n < 2 {
        return Err(Error::Unsupported(format!("A{}/B{n}", 2 * n)));
    }
    let images = (1..=2 * n)
        .map(|i| {
            let j = i.min(2 * n + 1 - i);
            let mut v = vec![0; n];
            v[j - 1] = if j == n { 2 } else { 1 };
            v
        })
        .collect();
    folding(&format!("A{}/B{n}", 2 * n), &format!("A{}", 2 * n), &format!("B{n}"), images)
}

/// `H ⊂ H × … × H` diagonally: `(λ_1, …, λ_k) ↦ Σ λ_i`.
pub fn diagonal(spec: &RootSystemSpec, copies: usize) -> Result<Embedding> {
    if copies == 0 {
        return Err(Error::Precondition("diagonal needs at least one copy".into()));
    }
    let target = RootSystem::build(spec)?;
    let source = RootSystem::build(&spec.power(copies)?)?;
    let r = target.rank();
    let matrix = (0..r)
        .map(|j| (0..r * copies).map(|i| (i % r == j) as i32).collect())
        .collect();
    Embedding::validated(
        format!("Diagonal({spec},{copies})"),
        source,
        target,
        matrix,
        Provenance::Composite,
    )
}

/// Every shipped embedding, derived from first principles, in data-file order.
pub fn derive_builtin() -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    for pair in PAIRS {
        out.push(match pair {
            "E6/F4" => e6_f4()?,
            "E6/C4" => e6_c4()?,
            p => derive_subsystem(p, 0)?,
        });
    }
    out.push(a_even_b(2)?);
    Ok(out)
}

/// Named embeddings: the shipped data plus anything the caller adds.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<Embedding>,
}

impl Catalog {
    /// Parses and validates the shipped stanzas.
    pub fn builtin() -> Result<Catalog> {
        let mut c = Catalog { entries: Vec::new() };
        c.add_stanzas(BUILTIN)?;
        Ok(c)
    }

    /// Adds (or replaces) embeddings from stanza text; each is validated.
    pub fn add_stanzas(&mut self, text: &str) -> Result<()> {
        for e in parse_stanzas(text)? {
            let report = validate_embedding(&e);
            if let Some(fail) = report.failures().first() {
                return Err(Error::Embedding {
                    name: e.name.clone(),
                    reason: format!("{}: {}", fail.name, fail.detail),
                });
            }
            self.entries.retain(|x| x.name != e.name);
            self.entries.push(e);
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    /// Looks up a stored name, or builds `Levi(G,i,j,…)`, `Diagonal(H,k)` or `A2n/Bn`.
    pub fn get(&self, name: &str) -> Result<Embedding> {
        let name = name.trim();
        if let Some(e) = self.entries.iter().find(|e| e.name == name) {
            return Ok(e.clone());
        }
        if let Some(args) = call_args(name, "Levi") {
            let spec = args.first().ok_or_else(|| Error::Parse(name.into()))?;
            let nodes = args[1..]
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad node {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return levi(&build(spec)?, &nodes);
        }
        if let Some(args) = call_args(name, "Diagonal") {
            if args.len() != 2 {
                return Err(Error::Parse(format!("expected Diagonal(<system>,<copies>), got {name:?}")));
            }
            let copies = args[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad copy count {:?}", args[1])))?;
            return diagonal(&args[0].parse()?, copies);
        }
        if let Some((a, b)) = name.split_once('/') {
            if let (Some(a), Some(b)) = (a.strip_prefix('A'), b.strip_prefix('B')) {
                if let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) {
                    if a == 2 * b {
                        return a_even_b(b);
                    }
                }
            }
        }
        Err(Error::UnknownPair(name.into()))
    }
}

fn call_args<'a>(name: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let inner = name.strip_prefix(head)?.trim().strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
}

/// Looks a name up in the shipped catalog.
pub fn catalog(name: &str) -> Result<Embedding> {
    static BUILT: OnceLock<std::result::Result<Catalog, String>> = OnceLock::new();
    match BUILT.get_or_init(|| Catalog::builtin().map_err(|e| e.to_string())) {
        Ok(c) => c.get(name),
        Err(msg) => Err(Error::Embedding {
            name: "builtin catalog".into(),
            reason: msg.clone(),
        }),
    }
}
