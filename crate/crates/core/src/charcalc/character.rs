use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// Weight-level character stored by dominant representatives.
///
/// A genuine character has nonnegative entries; a virtual one may carry signs.
#[derive(Clone)]
pub struct DominantCharacter {
    rs: Arc<RootSystem>,
    entries: BTreeMap<Weight, BigInt>,
    genuine: bool,
}

/// Formal sum of Weyl characters `Σ c_λ χ(λ)` with dominant indices.
#[derive(Clone)]
pub struct WeylSum {
    rs: Arc<RootSystem>,
    entries: BTreeMap<Weight, BigInt>,
}

fn check_keys(rs: &RootSystem, entries: &BTreeMap<Weight, BigInt>) -> Result<()> {
    for w in entries.keys() {
        rs.check(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
    }
    Ok(())
}

fn accumulate(entries: &mut BTreeMap<Weight, BigInt>, w: Weight, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match entries.entry(w) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Keys sorted highest first: by height in simple-root coordinates, then lexicographically.
pub(crate) fn sorted_keys<'a>(
    rs: &RootSystem,
    entries: &'a BTreeMap<Weight, BigInt>,
) -> Vec<(&'a Weight, &'a BigInt)> {
    let mut v: Vec<_> = entries.iter().collect();
    v.sort_by_cached_key(|(w, _)| std::cmp::Reverse((rs.height_scaled(w.coords()), w.coords().to_vec())));
    v
}

fn write_lines(
    f: &mut fmt::Formatter<'_>,
    rs: &RootSystem,
    entries: &BTreeMap<Weight, BigInt>,
) -> fmt::Result {
    if entries.is_empty() {
        return writeln!(f, "0");
    }
    for (w, c) in sorted_keys(rs, entries) {
        writeln!(f, "{w} {c}")?;
    }
    Ok(())
}

fn parse_lines(rs: &RootSystem, text: &str) -> Result<BTreeMap<Weight, BigInt>> {
    let mut entries = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == "0" {
            continue;
        }
        let (w, c) = line
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("expected `<weight> <multiplicity>`, got {line:?}")))?;
        let w = rs.parse_weight(w.trim())?;
        let c: BigInt = c
            .parse()
            .map_err(|_| Error::Parse(format!("bad multiplicity in {line:?}")))?;
        if entries.contains_key(&w) {
            return Err(Error::Parse(format!("duplicate weight {w}")));
        }
        accumulate(&mut entries, w, c);
    }
    Ok(entries)
}

impl DominantCharacter {
    /// Genuine character; rejects negative or non-dominant entries.
    pub fn genuine(rs: Arc<RootSystem>, entries: BTreeMap<Weight, BigInt>) -> Result<Self> {
        let ch = Self::virtual_char(rs, entries)?;
        ch.into_genuine()
    }

    /// Signed weight map.
    pub fn virtual_char(rs: Arc<RootSystem>, entries: BTreeMap<Weight, BigInt>) -> Result<Self> {
        check_keys(&rs, &entries)?;
        let entries = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(DominantCharacter {
            rs,
            entries,
            genuine: false,
        })
    }

    pub(crate) fn from_checked(rs: Arc<RootSystem>, entries: BTreeMap<Weight, BigInt>, genuine: bool) -> Self {
        DominantCharacter { rs, entries, genuine }
    }

    pub fn empty(rs: Arc<RootSystem>) -> Self {
        DominantCharacter {
            rs,
            entries: BTreeMap::new(),
            genuine: true,
        }
    }

    /// Marks the character genuine after checking nonnegativity.
    pub fn into_genuine(mut self) -> Result<Self> {
        if let Some((w, c)) = self.entries.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::NegativeCoefficient {
                weight: w.to_string(),
                coeff: c.to_string(),
                context: "genuine character".into(),
            });
        }
        self.genuine = true;
        Ok(self)
    }

    pub fn is_genuine(&self) -> bool {
        self.genuine
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, BigInt> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ m(μ) · |Wμ|`.
    pub fn dim(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(w, c)| c * BigInt::from(self.rs.orbit_size_raw(w.coords())))
            .sum()
    }

    /// Number of weights in the full expansion, counting multiplicity magnitudes.
    pub fn expansion_size(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(w, c)| c.magnitude() * self.rs.orbit_size_raw(w.coords()))
            .sum()
    }

    /// `self + k · other`; the result is virtual unless both inputs are genuine and `k ≥ 0`.
    pub fn add_scaled(&mut self, other: &DominantCharacter, k: &BigInt) {
        for (w, c) in &other.entries {
            accumulate(&mut self.entries, w.clone(), c * k);
        }
        self.genuine = self.genuine && other.genuine && !k.is_negative();
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(rs: Arc<RootSystem>, text: &str) -> Result<Self> {
        let entries = parse_lines(&rs, text)?;
        Self::virtual_char(rs, entries)
    }
}

impl PartialEq for DominantCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.rs.tag() == other.rs.tag() && self.entries == other.entries
    }
}

impl Eq for DominantCharacter {}

impl fmt::Display for DominantCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lines(f, &self.rs, &self.entries)
    }
}

impl fmt::Debug for DominantCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} character\n{}", self.rs.spec(), self)
    }
}

impl WeylSum {
    pub fn zero(rs: Arc<RootSystem>) -> Self {
        WeylSum {
            rs,
            entries: BTreeMap::new(),
        }
    }

    /// `χ(λ)`.
    pub fn single(rs: Arc<RootSystem>, lam: Weight) -> Result<Self> {
        let mut s = Self::zero(rs);
        s.add_term(lam, BigInt::from(1))?;
        Ok(s)
    }

    pub fn from_entries(rs: Arc<RootSystem>, entries: BTreeMap<Weight, BigInt>) -> Result<Self> {
        check_keys(&rs, &entries)?;
        let entries = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(WeylSum { rs, entries })
    }

    pub(crate) fn from_checked(rs: Arc<RootSystem>, entries: BTreeMap<Weight, BigInt>) -> Self {
        WeylSum { rs, entries }
    }

    pub fn add_term(&mut self, lam: Weight, c: BigInt) -> Result<()> {
        self.rs.check(&lam)?;
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.to_string()));
        }
        accumulate(&mut self.entries, lam, c);
        Ok(())
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn coeff(&self, lam: &Weight) -> BigInt {
        self.entries.get(lam).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, BigInt> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Terms sorted highest first.
    pub fn sorted(&self) -> Vec<(&Weight, &BigInt)> {
        sorted_keys(&self.rs, &self.entries)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|c| !c.is_negative())
    }

    pub fn add_scaled(&mut self, other: &WeylSum, k: &BigInt) {
        for (w, c) in &other.entries {
            accumulate(&mut self.entries, w.clone(), c * k);
        }
    }

    pub fn scaled(&self, k: &BigInt) -> WeylSum {
        let mut out = WeylSum::zero(Arc::clone(&self.rs));
        out.add_scaled(self, k);
        out
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(rs: Arc<RootSystem>, text: &str) -> Result<Self> {
        let entries = parse_lines(&rs, text)?;
        Self::from_entries(rs, entries)
    }
}

impl PartialEq for WeylSum {
    fn eq(&self, other: &Self) -> bool {
        self.rs.tag() == other.rs.tag() && self.entries == other.entries
    }
}

impl Eq for WeylSum {}

impl fmt::Display for WeylSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lines(f, &self.rs, &self.entries)
    }
}

impl fmt::Debug for WeylSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Weyl sum\n{}", self.rs.spec(), self)
    }
}

pub(crate) fn accumulate_into(entries: &mut BTreeMap<Weight, BigInt>, w: Weight, c: BigInt) {
    accumulate(entries, w, c)
}
