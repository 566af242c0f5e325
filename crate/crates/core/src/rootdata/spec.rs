use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan–Killing family of a simple component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn code(self) -> u64 {
        self as u64
    }

    fn from_code(code: u64) -> Family {
        match code {
            0 => Family::A,
            1 => Family::B,
            2 => Family::C,
            3 => Family::D,
            4 => Family::E,
            5 => Family::F,
            _ => Family::G,
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One simple component, e.g. `E7` or `A1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

/// Ranks above this do not fit the packed [`SystemTag`].
pub const MAX_COMPONENT_RANK: usize = 31;
pub const MAX_COMPONENTS: usize = 8;

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_COMPONENT_RANK {
            return Err(Error::Unsupported(format!("{}{}", family.letter(), rank)));
        }
        Ok(SimpleType { family, rank })
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Ordered list of simple components. Products such as `E7A1` are first class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemSpec {
    components: Vec<SimpleType>,
}

impl RootSystemSpec {
    pub fn new(components: Vec<SimpleType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Unsupported("empty root system".into()));
        }
        if components.len() > MAX_COMPONENTS {
            return Err(Error::Unsupported(format!(
                "at most {MAX_COMPONENTS} components are supported"
            )));
        }
        for c in &components {
            SimpleType::new(c.family, c.rank)?;
        }
        Ok(RootSystemSpec { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![SimpleType::new(family, rank)?])
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn tag(&self) -> SystemTag {
        let mut packed = 0u64;
        for (i, c) in self.components.iter().enumerate() {
            let byte = (c.family.code() << 5) | c.rank as u64;
            packed |= byte << (8 * i);
        }
        SystemTag(packed)
    }

    /// `copies` copies of this system side by side.
    pub fn power(&self, copies: usize) -> Result<Self> {
        let mut components = Vec::new();
        for _ in 0..copies {
            components.extend(self.components.iter().copied());
        }
        Self::new(components)
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    /// Accepts `E6`, `E7A1`, `C3A1`, and the same with `x` or `×` separators.
    fn from_str(s: &str) -> Result<Self> {
        let mut comps = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            if c == 'x' || c == '×' || c == ' ' {
                continue;
            }
            let family = match c.to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                'F' => Family::F,
                'G' => Family::G,
                _ => return Err(Error::Parse(format!("bad root system name {s:?}"))),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let rank: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("missing rank in {s:?}")))?;
            comps.push(SimpleType::new(family, rank)?);
        }
        RootSystemSpec::new(comps)
    }
}

/// Compact identifier of a root system; carried by every [`Weight`](super::Weight)
/// so that weights of different systems never compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemTag(u64);

impl SystemTag {
    /// Component ranks, in order.
    pub fn component_ranks(self) -> impl Iterator<Item = usize> {
        let packed = self.0;
        (0..MAX_COMPONENTS)
            .map(move |i| ((packed >> (8 * i)) & 0x1f) as usize)
            .take_while(|&r| r > 0)
    }

    pub fn spec(self) -> RootSystemSpec {
        let components = (0..MAX_COMPONENTS)
            .map(|i| (self.0 >> (8 * i)) & 0xff)
            .take_while(|&b| b & 0x1f != 0)
            .map(|b| SimpleType {
                family: Family::from_code(b >> 5),
                rank: (b & 0x1f) as usize,
            })
            .collect();
        RootSystemSpec { components }
    }
}

impl fmt::Display for SystemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}
