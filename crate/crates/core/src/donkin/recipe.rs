use std::fmt;

use num_traits::Signed;

use crate::charcalc::{CharCalc, WeylSum};
use crate::error::{Error, Result};
use crate::modular::Prime;
use crate::rootdata::{RootSystem, Weight};

/// An auxiliary module built from dual Weyl modules by tensor products and exterior powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxRecipe {
    Nabla(Weight),
    Tensor(Box<AuxRecipe>, Box<AuxRecipe>),
    AltPower(u32, Box<AuxRecipe>),
}

impl AuxRecipe {
    pub fn nabla(lam: Weight) -> AuxRecipe {
        AuxRecipe::Nabla(lam)
    }

    pub fn tensor(a: AuxRecipe, b: AuxRecipe) -> AuxRecipe {
        AuxRecipe::Tensor(Box::new(a), Box::new(b))
    }

    pub fn alt(k: u32, a: AuxRecipe) -> AuxRecipe {
        AuxRecipe::AltPower(k, Box::new(a))
    }

    /// The weights `λ` whose `∇(λ)` the recipe is built from, left to right.
    pub fn leaves(&self) -> Vec<&Weight> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Weight>) {
        match self {
            AuxRecipe::Nabla(w) => out.push(w),
            AuxRecipe::Tensor(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            AuxRecipe::AltPower(_, a) => a.collect_leaves(out),
        }
    }

    /// Exterior powers of degree at least two are only used when `p > 2`.
    pub fn check_prime(&self, p: Prime) -> Result<()> {
        match self {
            AuxRecipe::Nabla(_) => Ok(()),
            AuxRecipe::Tensor(a, b) => {
                a.check_prime(p)?;
                b.check_prime(p)
            }
            AuxRecipe::AltPower(k, a) => {
                if *k >= 2 && p.get() == 2 {
                    return Err(Error::Precondition(format!(
                        "{self} uses an exterior power, which needs p > 2"
                    )));
                }
                a.check_prime(p)
            }
        }
    }

    /// Parses `tensor(w1,w8)`, `alt(4,w8)`, `w3` or a bracketed weight.
    pub fn parse(rs: &RootSystem, text: &str) -> Result<AuxRecipe> {
        let mut p = Parser { rs, s: text.as_bytes(), pos: 0, text };
        let r = p.recipe()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    rs: &'a RootSystem,
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in recipe {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c as char)))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn recipe(&mut self) -> Result<AuxRecipe> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'[') {
            let start = self.pos;
            let end = self.text[start..]
                .find(']')
                .map(|i| start + i + 1)
                .ok_or_else(|| self.err("unclosed weight"))?;
            self.pos = end;
            return Ok(AuxRecipe::Nabla(self.rs.parse_weight(&self.text[start..end])?));
        }
        let word = self.word().to_ascii_lowercase();
        match word.as_str() {
            "tensor" => {
                self.eat(b'(')?;
                let a = self.recipe()?;
                self.eat(b',')?;
                let b = self.recipe()?;
                self.eat(b')')?;
                Ok(AuxRecipe::tensor(a, b))
            }
            "alt" => {
                self.eat(b'(')?;
                let k: u32 = self.word().parse().map_err(|_| self.err("expected a degree"))?;
                self.eat(b',')?;
                let a = self.recipe()?;
                self.eat(b')')?;
                if k == 0 {
                    return Err(self.err("degree must be positive"));
                }
                Ok(AuxRecipe::alt(k, a))
            }
            w if w.starts_with('w') => {
                let i: usize = w[1..].parse().map_err(|_| self.err("bad fundamental weight"))?;
                if i == 0 || i > self.rs.rank() {
                    return Err(self.err("fundamental weight index out of range"));
                }
                Ok(AuxRecipe::Nabla(self.rs.fundamental(i)))
            }
            _ => Err(self.err("expected tensor(..), alt(..), wN or a weight")),
        }
    }
}

/// `wN` for a fundamental weight, the bracket syntax otherwise.
pub(crate) fn weight_symbol(lam: &Weight) -> String {
    let c = lam.coords();
    let ones: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
    if ones.len() == 1 && c[ones[0]] == 1 {
        format!("w{}", ones[0] + 1)
    } else {
        lam.to_string()
    }
}

impl fmt::Display for AuxRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxRecipe::Nabla(w) => f.write_str(&weight_symbol(w)),
            AuxRecipe::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            AuxRecipe::AltPower(k, a) => write!(f, "alt({k},{a})"),
        }
    }
}

/// Good-filtration multiplicities of the recipe's module: its character as a sum of `χ(λ)`.
///
/// A negative coefficient cannot come from a module and is reported as an error.
pub fn supp_nabla(calc: &CharCalc, recipe: &AuxRecipe) -> Result<WeylSum> {
    let s = eval(calc, recipe)?;
    if let Some((w, c)) = s.iter().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeCoefficient {
            weight: w.to_string(),
            coeff: c.to_string(),
            context: format!("character of {recipe}"),
        });
    }
    Ok(s)
}

fn eval(calc: &CharCalc, recipe: &AuxRecipe) -> Result<WeylSum> {
    match recipe {
        AuxRecipe::Nabla(w) => WeylSum::single(calc.system().clone(), w.clone()),
        AuxRecipe::Tensor(a, b) => calc.tensor(&eval(calc, a)?, &eval(calc, b)?),
        AuxRecipe::AltPower(k, a) => calc.alt_power(*k, &eval(calc, a)?),
    }
}
