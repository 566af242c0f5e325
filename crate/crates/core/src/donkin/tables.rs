use std::fmt;

use super::recipe::AuxRecipe;
use super::three_pieces::THREE_PIECES;
use super::verify::{ADJOINT_E6C4, LAYERS, SOCLE};
use crate::branching::catalog;
use crate::error::{Error, Result};
use crate::rootdata::{Coords, RootSystem};

/// Condition on the characteristic under which a row applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PCond {
    Any,
    Eq(u32),
    Ne(u32),
    Gt(u32),
}

impl PCond {
    pub fn holds(self, p: u32) -> bool {
        match self {
            PCond::Any => true,
            PCond::Eq(q) => p == q,
            PCond::Ne(q) => p != q,
            PCond::Gt(q) => p > q,
        }
    }

    fn parse(text: &str) -> Option<PCond> {
        if text == "any" {
            return Some(PCond::Any);
        }
        let rest = text.strip_prefix('p')?;
        let (ctor, num): (fn(u32) -> PCond, &str) = if let Some(n) = rest.strip_prefix("!=") {
            (PCond::Ne, n)
        } else if let Some(n) = rest.strip_prefix('=') {
            (PCond::Eq, n)
        } else if let Some(n) = rest.strip_prefix('>') {
            (PCond::Gt, n)
        } else {
            return None;
        };
        num.parse().ok().map(ctor)
    }
}

impl fmt::Display for PCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PCond::Any => f.write_str("any"),
            PCond::Eq(q) => write!(f, "p={q}"),
            PCond::Ne(q) => write!(f, "p!={q}"),
            PCond::Gt(q) => write!(f, "p>{q}"),
        }
    }
}

/// How one weight (or the whole pair) is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Every layer of the restriction is an irreducible dual Weyl module.
    IrreducibleLayers,
    /// Levi factor times `A1`, with unique `A1` partners.
    SocleProduct,
    /// Auxiliary module built from certified weights.
    Aux(AuxRecipe),
    /// Twist of a certified fundamental weight (1-based) by the graph automorphism.
    Symmetry(usize),
    /// The restricted adjoint module of `E6 ⊃ C4`.
    AdjointE6C4,
    /// Three-pieces criterion with `σ_i = (p−1)·base_i`, and an optional unchecked claim for condition (3).
    ThreePieces { base: [Coords; 3], external: Option<String> },
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::IrreducibleLayers => f.write_str(LAYERS),
            Strategy::SocleProduct => f.write_str(SOCLE),
            Strategy::Aux(r) => write!(f, "aux {r}"),
            Strategy::Symmetry(i) => write!(f, "symmetry w{i}"),
            Strategy::AdjointE6C4 => f.write_str(ADJOINT_E6C4),
            Strategy::ThreePieces { .. } => f.write_str(THREE_PIECES),
        }
    }
}

/// One table row: the fundamental weight (1-based; `None` for the whole pair), when it applies, and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub weight: Option<usize>,
    pub when: PCond,
    pub strategy: Strategy,
    /// Skipped under the fast tier.
    pub slow: bool,
}

impl Row {
    /// Parses `w5 p=3 aux tensor(w1,w2)`, `w1 any layers`, `w6 p>3 aux alt(3,w8) slow`,
    /// `w5 any symmetry w3`, `w2 any adjoint-e6c4` or
    /// `all any three-pieces [1,0,1,0,0,0] [0,1,0,1,0,0] [0,0,0,0,1,1]`.
    pub fn parse(rs: &RootSystem, line: &str) -> Result<Row> {
        let bad = |why: &str| Error::Parse(format!("{why} in strategy row {line:?}"));
        let mut toks: Vec<&str> = line.split_whitespace().collect();
        let slow = toks.last() == Some(&"slow");
        if slow {
            toks.pop();
        }
        if toks.len() < 3 {
            return Err(bad("expected <weight> <condition> <strategy>"));
        }
        let weight = match toks[0] {
            "all" => None,
            w => Some(fundamental_index(rs, w).ok_or_else(|| bad("bad weight"))?),
        };
        let when = PCond::parse(toks[1]).ok_or_else(|| bad("bad condition"))?;
        let args = &toks[3..];
        let strategy = match toks[2] {
            LAYERS if args.is_empty() => Strategy::IrreducibleLayers,
            SOCLE if args.is_empty() => Strategy::SocleProduct,
            ADJOINT_E6C4 if args.is_empty() => Strategy::AdjointE6C4,
            "aux" if !args.is_empty() => Strategy::Aux(AuxRecipe::parse(rs, &args.join(" "))?),
            "symmetry" if args.len() == 1 => {
                Strategy::Symmetry(fundamental_index(rs, args[0]).ok_or_else(|| bad("bad symmetry source"))?)
            }
            THREE_PIECES if args.len() >= 3 => {
                let w = |t: &str| rs.parse_weight(t).map(|w| w.into_coords());
                let external = (args.len() > 3).then(|| args[3..].join(" "));
                Strategy::ThreePieces {
                    base: [w(args[0])?, w(args[1])?, w(args[2])?],
                    external,
                }
            }
            _ => return Err(bad("unknown strategy")),
        };
        Ok(Row { weight, when, strategy, slow })
    }
}

fn fundamental_index(rs: &RootSystem, text: &str) -> Option<usize> {
    let i: usize = text.strip_prefix('w')?.parse().ok()?;
    (1..=rs.rank()).contains(&i).then_some(i)
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.weight {
            Some(i) => write!(f, "w{i}")?,
            None => f.write_str("all")?,
        }
        write!(f, " {} {}", self.when, self.strategy)?;
        if let Strategy::ThreePieces { base, external } = &self.strategy {
            for b in base {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                write!(f, " [{}]", parts.join(","))?;
            }
            if let Some(e) = external {
                write!(f, " {e}")?;
            }
        }
        if self.slow {
            f.write_str(" slow")?;
        }
        Ok(())
    }
}

/// Ordered rows for one pair. Rows for the same weight are tried in order; the first whose
/// condition holds is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTable {
    pub pair: String,
    /// Smallest characteristic the table is meant for.
    pub min_p: u32,
    pub rows: Vec<Row>,
}

impl StrategyTable {
    /// Parses one row per line; `#` starts a comment.
    pub fn parse(pair: &str, min_p: u32, rs: &RootSystem, text: &str) -> Result<StrategyTable> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| Row::parse(rs, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(StrategyTable {
            pair: pair.into(),
            min_p,
            rows,
        })
    }

    /// Weights in table order, each once.
    pub fn weights(&self) -> Vec<Option<usize>> {
        let mut out: Vec<Option<usize>> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.weight) {
                out.push(r.weight);
            }
        }
        out
    }

    /// The row used for each weight at `p`, in table order; `None` where no condition holds.
    pub fn select(&self, p: u32) -> Vec<(Option<usize>, Option<&Row>)> {
        self.weights()
            .into_iter()
            .map(|w| (w, self.rows.iter().find(|r| r.weight == w && r.when.holds(p))))
            .collect()
    }

    /// Replaces every row for the weights mentioned in `rows`.
    pub fn with_overrides(mut self, rows: Vec<Row>) -> StrategyTable {
        let touched: Vec<Option<usize>> = rows.iter().map(|r| r.weight).collect();
        let mut out: Vec<Row> = Vec::new();
        let mut placed = Vec::new();
        for r in self.rows.drain(..) {
            if touched.contains(&r.weight) {
                if !placed.contains(&r.weight) {
                    placed.push(r.weight);
                    out.extend(rows.iter().filter(|n| n.weight == r.weight).cloned());
                }
            } else {
                out.push(r);
            }
        }
        for r in rows {
            if !placed.contains(&r.weight) {
                out.push(r);
            }
        }
        self.rows = out;
        self
    }

    /// Checks that no fundamental weight is listed after one it lies strictly below.
    pub fn check_order(&self, rs: &RootSystem) -> Result<()> {
        let ws: Vec<usize> = self.weights().into_iter().flatten().collect();
        for (a, &i) in ws.iter().enumerate() {
            for &j in &ws[a + 1..] {
                if rs.dominance_lt(&rs.fundamental(j), &rs.fundamental(i))? {
                    return Err(Error::Precondition(format!(
                        "table for {} lists ϖ{j} after ϖ{i}, but ϖ{j} < ϖ{i}",
                        self.pair
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }
}

const E8_D8: &str = "
w8 any layers
w1 any layers
w7 any aux alt(2,w8)
w2 any aux tensor(w1,w8)
w6 p=3 aux tensor(w1,w1) slow
w6 p>3 aux alt(3,w8) slow
w3 any aux alt(2,w1)
w5 p=3 aux tensor(w1,w2) slow
w5 p>3 aux alt(4,w8) slow
w4 any aux alt(2,w2) slow
";

const E8_E7A1: &str = "
w8 any layers
w1 any socle
w7 any aux alt(2,w8)
w2 any aux tensor(w1,w8)
w6 p=3 aux tensor(w1,w1) slow
w6 p>3 aux alt(3,w8) slow
w3 any aux alt(2,w1)
w5 p=3 aux tensor(w1,w2) slow
w5 p>3 aux alt(4,w8) slow
w4 any aux alt(2,w2) slow
";

const E7_A7: &str = "
w7 any layers
w1 any layers
w6 any aux alt(2,w7)
w2 p=7 layers
w2 p!=7 aux tensor(w1,w7)
w3 any aux alt(2,w1)
w5 p!=3 aux alt(3,w7)
w5 p=3 aux tensor(w1,w2)
w4 any aux alt(2,w2)
";

const E7_D6A1: &str = "
w7 any socle
w1 any socle
w6 any aux alt(2,w7)
w2 any socle
w3 any aux alt(2,w1)
w5 p!=3 aux alt(3,w7)
w5 p=3 aux tensor(w1,w2)
w4 any aux alt(2,w2)
";

const E6_A5A1: &str = "
w1 any socle
w6 any symmetry w1
w2 any socle
w3 any aux alt(2,w1)
w5 any symmetry w3
w4 any aux alt(2,w2)
";

const E6_C4: &str = "
w1 any layers
w6 any symmetry w1
w2 any adjoint-e6c4
w3 any aux alt(2,w1)
w5 any symmetry w3
w4 any aux alt(2,w2)
";

const F4_B4: &str = "
w4 any layers
w1 any layers
w3 any aux alt(2,w4)
w2 any aux alt(2,w1)
";

const F4_C3A1: &str = "
w4 any socle
w1 any socle
w3 any aux alt(2,w4)
w2 any aux alt(2,w1)
";

const E6_F4: &str = "all any three-pieces [1,0,1,0,0,0] [0,1,0,1,0,0] [0,0,0,0,1,1] \
surjectivity of ∇(ϖ1) onto its restricted top: the fixed-point Lie algebra kills a one-dimensional \
subspace of the three weight spaces of ∇(ϖ1) restricting to zero (hand computation)";

fn source_rows(pair: &str) -> Option<(&'static str, u32)> {
    Some(match pair {
        "E8/D8" => (E8_D8, 3),
        "E8/E7A1" => (E8_E7A1, 3),
        "E7/A7" => (E7_A7, 3),
        "E7/D6A1" => (E7_D6A1, 3),
        "E6/A5A1" => (E6_A5A1, 3),
        "E6/C4" => (E6_C4, 3),
        "F4/B4" => (F4_B4, 3),
        "F4/C3A1" => (F4_C3A1, 3),
        "E6/F4" => (E6_F4, 2),
        _ => return None,
    })
}

/// The shipped table for one of the pairs in [`crate::branching::PAIRS`].
pub fn strategy_table(pair: &str) -> Result<StrategyTable> {
    let (text, min_p) = source_rows(pair).ok_or_else(|| Error::UnknownPair(pair.into()))?;
    let e = catalog(pair)?;
    StrategyTable::parse(pair, min_p, e.source(), text)
}
