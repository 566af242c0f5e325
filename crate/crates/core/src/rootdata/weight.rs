use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use super::spec::SystemTag;
use crate::error::{Error, Result};

/// Integer coordinate vector; inline for every supported rank up to 8.
pub type Coords = SmallVec<[i32; 8]>;

/// A weight in the fundamental-weight basis of an identified root system.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    tag: SystemTag,
    coords: Coords,
}

impl Weight {
    pub(crate) fn from_parts(tag: SystemTag, coords: Coords) -> Weight {
        Weight { tag, coords }
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn into_coords(self) -> Coords {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight {
            tag: self.tag,
            coords: self.coords.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn with_coords(&self, coords: Coords) -> Weight {
        debug_assert_eq!(coords.len(), self.coords.len());
        Weight {
            tag: self.tag,
            coords,
        }
    }

    /// Errors unless both weights belong to the same system.
    pub fn check_same(&self, other: &Weight) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::Mismatch {
                expected: self.tag.to_string(),
                found: other.tag.to_string(),
            });
        }
        Ok(())
    }

    /// Parses the bracket syntax `[1,0,0,0,0,0|2]`; `|` separates components.
    pub fn parse(tag: SystemTag, text: &str) -> Result<Weight> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("weight must be bracketed: {text:?}")))?;
        let ranks: Vec<usize> = tag.component_ranks().collect();
        let total: usize = ranks.iter().sum();
        let parts: Vec<&str> = inner.split('|').collect();
        let mut coords = Coords::new();
        if parts.len() == 1 || parts.len() == ranks.len() {
            for (i, part) in parts.iter().enumerate() {
                let before = coords.len();
                for tok in part.split(',') {
                    let tok = tok.trim();
                    if tok.is_empty() {
                        continue;
                    }
                    coords.push(
                        tok.parse()
                            .map_err(|_| Error::Parse(format!("bad integer {tok:?} in {text:?}")))?,
                    );
                }
                if parts.len() > 1 && coords.len() - before != ranks[i] {
                    return Err(Error::Parse(format!(
                        "component {} of {text:?} should have {} entries",
                        i + 1,
                        ranks[i]
                    )));
                }
            }
        } else {
            return Err(Error::Parse(format!(
                "{text:?} has {} components, {tag} has {}",
                parts.len(),
                ranks.len()
            )));
        }
        if coords.len() != total {
            return Err(Error::Parse(format!(
                "{text:?} has {} entries, {tag} has rank {total}",
                coords.len()
            )));
        }
        Ok(Weight { tag, coords })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut idx = 0;
        for (ci, rank) in self.tag.component_ranks().enumerate() {
            if ci > 0 {
                f.write_str("|")?;
            }
            for j in 0..rank {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.coords[idx])?;
                idx += 1;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.tag, rhs.tag, "adding weights of different systems");
        Weight {
            tag: self.tag,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.tag, rhs.tag, "subtracting weights of different systems");
        Weight {
            tag: self.tag,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystemSpec;

    #[test]
    fn parse_and_print() {
        let e6a1: RootSystemSpec = "E6A1".parse().unwrap();
        let w = Weight::parse(e6a1.tag(), "[1,0,0,0,0,0|2]").unwrap();
        assert_eq!(w.coords(), &[1, 0, 0, 0, 0, 0, 2]);
        assert_eq!(w.to_string(), "[1,0,0,0,0,0|2]");
        // Flat form is accepted as well.
        let flat = Weight::parse(e6a1.tag(), "[1,0,0,0,0,0,2]").unwrap();
        assert_eq!(flat, w);
        assert!(Weight::parse(e6a1.tag(), "[1,0,0,0,0|0,2]").is_err());
        assert!(Weight::parse(e6a1.tag(), "1,0").is_err());
        assert!(Weight::parse(e6a1.tag(), "[1,x,0,0,0,0|2]").is_err());
    }

    #[test]
    fn different_systems_never_equal() {
        let a: RootSystemSpec = "A2".parse().unwrap();
        let b: RootSystemSpec = "A1A1".parse().unwrap();
        let wa = Weight::parse(a.tag(), "[1,0]").unwrap();
        let wb = Weight::parse(b.tag(), "[1|0]").unwrap();
        assert_eq!(wa.coords(), wb.coords());
        assert_ne!(wa, wb);
        assert!(wa.check_same(&wb).is_err());
    }
}
