use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::charcalc::{CharCalc, DominantCharacter, WeylSum};
use crate::error::{Error, Result};
use crate::rootdata::{Coords, RootSystem, RootSystemSpec, Weight, DEFAULT_ORBIT_CAP};

/// How the restriction matrix was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Source roots (in simple-root coordinates) serving as the simple roots of the target.
    SubsystemRoots(Vec<Vec<i32>>),
    /// Explicit images of the source fundamental weights.
    FoldingTable,
    Composite,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::SubsystemRoots(_) => "subsystem",
            Provenance::FoldingTable => "folding",
            Provenance::Composite => "composite",
        }
    }
}

/// Restriction map on weight lattices for a subgroup `H ⊂ G` of maximal torus rank or a folding.
///
/// `matrix[j][i]` is the `j`-th target coordinate of the image of the `i`-th source fundamental weight.
#[derive(Clone)]
pub struct Embedding {
    pub name: String,
    source: Arc<RootSystem>,
    target: Arc<RootSystem>,
    matrix: Vec<Vec<i32>>,
    provenance: Provenance,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Embedding")
            .field("name", &self.name)
            .field("source", &self.source.spec().to_string())
            .field("target", &self.target.spec().to_string())
            .field("matrix", &self.matrix)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl Embedding {
    /// Builds an embedding without validating it; see [`validate_embedding`].
    pub fn from_matrix(
        name: impl Into<String>,
        source: Arc<RootSystem>,
        target: Arc<RootSystem>,
        matrix: Vec<Vec<i32>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let name = name.into();
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Embedding {
                name,
                reason: format!(
                    "matrix must be {}×{}",
                    target.rank(),
                    source.rank()
                ),
            });
        }
        Ok(Embedding {
            name,
            source,
            target,
            matrix,
            provenance,
        })
    }

    /// Builds and validates; a failed invariant is an error naming it.
    pub fn validated(
        name: impl Into<String>,
        source: Arc<RootSystem>,
        target: Arc<RootSystem>,
        matrix: Vec<Vec<i32>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let e = Self::from_matrix(name, source, target, matrix, provenance)?;
        let report = validate_embedding(&e);
        if let Some(fail) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::Embedding {
                name: e.name.clone(),
                reason: format!("{}: {}", fail.name, fail.detail),
            });
        }
        Ok(e)
    }

    pub fn source(&self) -> &Arc<RootSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RootSystem> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Image of the `i`-th source fundamental weight (1-based).
    pub fn image_of_fundamental(&self, i: usize) -> Weight {
        let col: Vec<i32> = self.matrix.iter().map(|r| r[i - 1]).collect();
        self.target.weight(&col).expect("rank checked")
    }

    pub(crate) fn apply_raw(&self, v: &[i32], out: &mut Coords) {
        out.clear();
        out.extend(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i32>()),
        );
    }

    /// `G → K` from `self: G → H` and `then: H → K`.
    pub fn compose(&self, then: &Embedding) -> Result<Embedding> {
        if self.target.tag() != then.source.tag() {
            return Err(Error::Mismatch {
                expected: self.target.spec().to_string(),
                found: then.source.spec().to_string(),
            });
        }
        let matrix = then
            .matrix
            .iter()
            .map(|row| {
                (0..self.source.rank())
                    .map(|i| row.iter().zip(&self.matrix).map(|(a, r)| a * r[i]).sum())
                    .collect()
            })
            .collect();
        Embedding::from_matrix(
            format!("{}∘{}", then.name, self.name),
            Arc::clone(&self.source),
            Arc::clone(&then.target),
            matrix,
            Provenance::Composite,
        )
    }

    /// Relabels target coordinates by a permutation (`perm[j]` is the old row placed at row `j`).
    pub fn permute_target(&self, perm: &[usize], name: impl Into<String>) -> Result<Embedding> {
        let matrix = perm.iter().map(|&j| self.matrix[j].clone()).collect();
        let provenance = match &self.provenance {
            Provenance::SubsystemRoots(roots) => {
                Provenance::SubsystemRoots(perm.iter().map(|&j| roots[j].clone()).collect())
            }
            p => p.clone(),
        };
        Embedding::from_matrix(
            name,
            Arc::clone(&self.source),
            Arc::clone(&self.target),
            matrix,
            provenance,
        )
    }

    /// Text stanza; the format read by [`parse_stanzas`].
    pub fn to_stanza(&self) -> String {
        let mut s = format!(
            "name {}\nsource {}\ntarget {}\nprovenance {}\n",
            self.name,
            self.source.spec(),
            self.target.spec(),
            self.provenance.label()
        );
        if let Provenance::SubsystemRoots(roots) = &self.provenance {
            for r in roots {
                s.push_str(&format!("root {}\n", join(r)));
            }
        }
        for row in &self.matrix {
            s.push_str(&format!("row {}\n", join(row)));
        }
        s
    }
}

fn join(v: &[i32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `matrix · λ`.
pub fn restrict_weight(e: &Embedding, lam: &Weight) -> Result<Weight> {
    e.source.check(lam)?;
    let mut out = Coords::new();
    e.apply_raw(lam.coords(), &mut out);
    e.target.weight(&out)
}

/// Restricts a weight-level character, orbit by orbit, keeping dominant images.
pub fn restrict_character(e: &Embedding, ch: &DominantCharacter) -> Result<DominantCharacter> {
    restrict_character_capped(e, ch, DEFAULT_ORBIT_CAP)
}

pub fn restrict_character_capped(
    e: &Embedding,
    ch: &DominantCharacter,
    cap: usize,
) -> Result<DominantCharacter> {
    if ch.system().tag() != e.source.tag() {
        return Err(Error::Mismatch {
            expected: e.source.spec().to_string(),
            found: ch.system().spec().to_string(),
        });
    }
    let mut acc: HashMap<Coords, BigInt> = HashMap::new();
    let mut img = Coords::new();
    for (mu, m) in ch.iter() {
        let mut counts: HashMap<Coords, i64> = HashMap::new();
        for w in e.source.orbit_raw(mu.coords(), cap)? {
            e.apply_raw(&w, &mut img);
            if img.iter().all(|&x| x >= 0) {
                *counts.entry(img.clone()).or_insert(0) += 1;
            }
        }
        for (k, n) in counts {
            *acc.entry(k).or_default() += m * n;
        }
    }
    let entries: BTreeMap<Weight, BigInt> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(c, m)| (e.target.weight(&c).expect("rank checked"), m))
        .collect();
    let out = DominantCharacter::virtual_char(Arc::clone(&e.target), entries)?;
    if out.dim() != ch.dim() {
        return Err(Error::Embedding {
            name: e.name.clone(),
            reason: format!(
                "restriction changed the dimension from {} to {}; the image is not Weyl-invariant",
                ch.dim(),
                out.dim()
            ),
        });
    }
    if ch.is_genuine() {
        out.into_genuine()
    } else {
        Ok(out)
    }
}

/// `res ∇_G(λ)` as a sum of target Weyl characters.
pub fn branch(e: &Embedding, lam: &Weight) -> Result<WeylSum> {
    let src = CharCalc::new(Arc::clone(&e.source));
    let tgt = CharCalc::new(Arc::clone(&e.target));
    branch_with(e, &src, &tgt, lam)
}

/// [`branch`] with caller-supplied calculators, so memos are shared.
pub fn branch_with(e: &Embedding, src: &CharCalc, tgt: &CharCalc, lam: &Weight) -> Result<WeylSum> {
    let ch = src.freudenthal(lam)?;
    let res = restrict_character_capped(e, &ch, src.cap())?;
    let s = tgt.decompose(&res)?;
    if let Some((w, c)) = s.iter().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeCoefficient {
            weight: w.to_string(),
            coeff: c.to_string(),
            context: format!("branching {lam} along {}", e.name),
        });
    }
    Ok(s)
}

/// One named invariant check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub embedding: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn rational_rank(m: &[Vec<i32>]) -> usize {
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i64)).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c] / a[rank][c];
                for k in c..cols {
                    let t = a[rank][k] * f;
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Source roots given in simple-root coordinates, possibly negative.
pub(crate) struct RootData {
    pub weight_form: Vec<i32>,
    pub coroot: Vec<i32>,
}

pub(crate) fn root_data(rs: &RootSystem, coords: &[i32]) -> Option<RootData> {
    let neg = coords.iter().any(|&c| c < 0);
    let abs: Vec<i32> = coords.iter().map(|c| c.abs()).collect();
    let root = rs.find_root(&abs)?;
    if neg && coords.iter().any(|&c| c > 0) {
        return None;
    }
    let s = if neg { -1 } else { 1 };
    Some(RootData {
        weight_form: root.weight_form.coords().iter().map(|x| s * x).collect(),
        coroot: root.coroot.iter().map(|x| s * x).collect(),
    })
}

/// Runs every invariant and reports each check.
pub fn validate_embedding(e: &Embedding) -> ValidationReport {
    let mut report = ValidationReport {
        embedding: e.name.clone(),
        checks: Vec::new(),
    };
    let rank = rational_rank(&e.matrix);
    report.push(
        "full row rank",
        rank == e.target.rank(),
        format!("rank {rank}, target rank {}", e.target.rank()),
    );
    let nonneg = e.matrix.iter().flatten().all(|&x| x >= 0);
    report.push(
        "dominant to dominant",
        nonneg,
        if nonneg {
            "all entries ≥ 0".to_string()
        } else {
            "a fundamental weight restricts to a non-dominant weight".to_string()
        },
    );
    if let Provenance::SubsystemRoots(roots) = &e.provenance {
        report.checks.push(subsystem_check(e, roots));
    }
    match adjoint_check(e) {
        Ok((src, tgt, detail)) => report.push("adjoint dimension", src == tgt, detail),
        Err(err) => report.push("adjoint dimension", false, err.to_string()),
    }
    report
}

fn subsystem_check(e: &Embedding, roots: &[Vec<i32>]) -> Check {
    let fail = |detail: String| Check {
        name: "Cartan".into(),
        passed: false,
        detail,
    };
    if roots.len() != e.target.rank() {
        return fail(format!("{} roots for target rank {}", roots.len(), e.target.rank()));
    }
    let mut data = Vec::new();
    for r in roots {
        match root_data(&e.source, r) {
            Some(d) => data.push(d),
            None => return fail(format!("{r:?} is not a root of {}", e.source.spec())),
        }
    }
    for (j, dj) in data.iter().enumerate() {
        if dj.coroot != e.matrix[j] {
            return fail(format!(
                "Cartan mismatch: row {} is {:?}, coroot of the chosen root is {:?}",
                j + 1,
                e.matrix[j],
                dj.coroot
            ));
        }
        for (k, dk) in data.iter().enumerate() {
            let pairing: i32 = dj.weight_form.iter().zip(&dk.coroot).map(|(a, b)| a * b).sum();
            if pairing != e.target.cartan()[j][k] {
                return fail(format!(
                    "Cartan mismatch at ({}, {}): {pairing} vs {}",
                    j + 1,
                    k + 1,
                    e.target.cartan()[j][k]
                ));
            }
        }
    }
    Check {
        name: "Cartan".into(),
        passed: true,
        detail: "chosen roots reproduce the target Cartan matrix".into(),
    }
}

/// Restricts the adjoint module(s) of the source and compares dimensions and signs.
fn adjoint_check(e: &Embedding) -> Result<(BigInt, BigInt, String)> {
    let calc = CharCalc::new(Arc::clone(&e.source));
    let tcalc = CharCalc::new(Arc::clone(&e.target));
    let mut src_dim = BigInt::zero();
    let mut tgt_dim = BigInt::zero();
    let mut parts = Vec::new();
    for (c, _) in e.source.components().iter().enumerate() {
        let theta = e.source.highest_root(c).weight_form.clone();
        let ch = calc.freudenthal(&theta)?;
        src_dim += ch.dim();
        let res = restrict_character(e, &ch)?;
        tgt_dim += res.dim();
        let s = tcalc.decompose(&res)?;
        if let Some((w, c)) = s.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::NegativeCoefficient {
                weight: w.to_string(),
                coeff: c.to_string(),
                context: "restricted adjoint".into(),
            });
        }
        for (w, c) in s.sorted() {
            parts.push(format!("{c}×{w}({})", tcalc.weyl_dim(w)?));
        }
    }
    Ok((
        src_dim.clone(),
        tgt_dim,
        format!("{src_dim} → {}", parts.join(" + ")),
    ))
}

/// Parses blank-line separated stanzas. Subsystem stanzas must list their roots.
pub fn parse_stanzas(text: &str) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !block.is_empty() {
                out.push(parse_stanza(&block)?);
                block.clear();
            }
        } else {
            block.push(line);
        }
    }
    Ok(out)
}

fn ints(s: &str) -> Result<Vec<i32>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

fn parse_stanza(lines: &[&str]) -> Result<Embedding> {
    let (mut name, mut source, mut target, mut prov) = (None, None, None, None);
    let mut roots = Vec::new();
    let mut rows = Vec::new();
    for line in lines {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => name = Some(rest.to_string()),
            "source" => source = Some(rest.parse::<RootSystemSpec>()?),
            "target" => target = Some(rest.parse::<RootSystemSpec>()?),
            "provenance" => prov = Some(rest.to_string()),
            "root" => roots.push(ints(rest)?),
            "row" => rows.push(ints(rest)?),
            _ => return Err(Error::Parse(format!("unknown stanza key {key:?}"))),
        }
    }
    let missing = |k: &str| Error::Parse(format!("stanza is missing `{k}`"));
    let name = name.ok_or_else(|| missing("name"))?;
    let source = RootSystem::build(&source.ok_or_else(|| missing("source"))?)?;
    let target = RootSystem::build(&target.ok_or_else(|| missing("target"))?)?;
    let provenance = match prov.as_deref() {
        Some("subsystem") => Provenance::SubsystemRoots(roots),
        Some("folding") => Provenance::FoldingTable,
        Some("composite") => Provenance::Composite,
        Some(other) => return Err(Error::Parse(format!("unknown provenance {other:?}"))),
        None => return Err(missing("provenance")),
    };
    Embedding::from_matrix(name, source, target, rows, provenance)
}
