use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::character::{accumulate_into, DominantCharacter, WeylSum};
use super::freudenthal::{freudenthal_raw, weyl_dim_raw};
use crate::error::{Error, Result};
use crate::rootdata::{Coords, RootSystem, Weight, DEFAULT_ORBIT_CAP};

/// Persistent storage for Freudenthal results, keyed by system and highest weight.
pub trait CharacterStore: Send + Sync {
    fn load(&self, rs: &Arc<RootSystem>, lam: &Weight) -> Option<DominantCharacter>;
    fn save(&self, lam: &Weight, ch: &DominantCharacter);
}

/// Counters reported alongside verification results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CalcStats {
    pub freudenthal_runs: u64,
    pub memo_hits: u64,
    pub store_hits: u64,
    pub orbit_weights_expanded: u64,
}

#[derive(Default)]
struct Counters {
    freudenthal_runs: AtomicU64,
    memo_hits: AtomicU64,
    store_hits: AtomicU64,
    orbit_weights_expanded: AtomicU64,
}

/// Character arithmetic over one root system, with a Freudenthal memo.
pub struct CharCalc {
    rs: Arc<RootSystem>,
    cap: usize,
    memo: RwLock<HashMap<Coords, Arc<DominantCharacter>>>,
    store: Option<Arc<dyn CharacterStore>>,
    counters: Counters,
}

impl CharCalc {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        CharCalc {
            rs,
            cap: DEFAULT_ORBIT_CAP,
            memo: RwLock::new(HashMap::new()),
            store: None,
            counters: Counters::default(),
        }
    }

    /// Largest Weyl orbit that may be expanded.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_store(mut self, store: Arc<dyn CharacterStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn stats(&self) -> CalcStats {
        CalcStats {
            freudenthal_runs: self.counters.freudenthal_runs.load(Ordering::Relaxed),
            memo_hits: self.counters.memo_hits.load(Ordering::Relaxed),
            store_hits: self.counters.store_hits.load(Ordering::Relaxed),
            orbit_weights_expanded: self.counters.orbit_weights_expanded.load(Ordering::Relaxed),
        }
    }

    fn dominant(&self, lam: &Weight) -> Result<()> {
        self.rs.check(lam)?;
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.to_string()));
        }
        Ok(())
    }

    pub fn weyl_dim(&self, lam: &Weight) -> Result<BigInt> {
        self.dominant(lam)?;
        Ok(weyl_dim_raw(&self.rs, lam.coords()))
    }

    /// Memoized [`freudenthal`](super::freudenthal).
    pub fn freudenthal(&self, lam: &Weight) -> Result<Arc<DominantCharacter>> {
        self.dominant(lam)?;
        if let Some(ch) = self.memo.read().expect("memo lock").get(lam.coords()) {
            self.counters.memo_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(Arc::clone(ch));
        }
        let ch = match self.store.as_ref().and_then(|s| s.load(&self.rs, lam)) {
            Some(ch) => {
                self.counters.store_hits.fetch_add(1, Ordering::Relaxed);
                ch
            }
            None => {
                self.counters.freudenthal_runs.fetch_add(1, Ordering::Relaxed);
                let raw = freudenthal_raw(&self.rs, lam.coords())?;
                let entries = raw.into_iter().map(|(c, m)| (self.rs.wrap(c), m)).collect();
                let ch = DominantCharacter::from_checked(Arc::clone(&self.rs), entries, true);
                if let Some(s) = &self.store {
                    s.save(lam, &ch);
                }
                ch
            }
        };
        let ch = Arc::new(ch);
        self.memo
            .write()
            .expect("memo lock")
            .insert(lam.coords().iter().copied().collect(), Arc::clone(&ch));
        Ok(ch)
    }

    fn same(&self, rs: &RootSystem) -> Result<()> {
        if rs.tag() != self.rs.tag() {
            return Err(Error::Mismatch {
                expected: self.rs.spec().to_string(),
                found: rs.spec().to_string(),
            });
        }
        Ok(())
    }

    /// `Σ c_λ · ch ∇(λ)`.
    pub fn to_weights(&self, s: &WeylSum) -> Result<DominantCharacter> {
        self.same(s.system())?;
        let mut out = DominantCharacter::empty(Arc::clone(&self.rs));
        for (lam, c) in s.iter() {
            out.add_scaled(&*self.freudenthal(lam)?, c);
        }
        Ok(out)
    }

    /// Peels Weyl characters off at the maximal remaining weight.
    pub fn decompose(&self, ch: &DominantCharacter) -> Result<WeylSum> {
        self.same(ch.system())?;
        let mut rem: BTreeMap<Weight, BigInt> = ch.entries().clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rem
            .keys()
            .max_by_key(|w| (self.rs.height_scaled(w.coords()), w.coords().to_vec()))
            .cloned()
        {
            let c = rem[&top].clone();
            for (w, m) in self.freudenthal(&top)?.iter() {
                accumulate_into(&mut rem, w.clone(), -(&c * m));
            }
            debug_assert!(!rem.contains_key(&top));
            out.insert(top, c);
        }
        Ok(WeylSum::from_checked(Arc::clone(&self.rs), out))
    }

    /// Brauer–Klimyk: `Σ_{(λ,c)∈a} Σ_{μ ∈ k·weights} c·m(μ)·χ(λ+μ)`, each term normalized by the dot action.
    pub fn klimyk(&self, a: &WeylSum, weights: &DominantCharacter, k: i32) -> Result<WeylSum> {
        self.same(a.system())?;
        self.same(weights.system())?;
        let terms: Vec<(&Weight, &BigInt)> = a.iter().collect();
        let mut total: HashMap<Coords, BigInt> = HashMap::new();
        let mut local: HashMap<(usize, Coords), i64> = HashMap::new();
        let mut v: Coords = Coords::new();
        for (mu, m) in weights.iter() {
            let orbit = self.rs.orbit_raw(mu.scale(k).coords(), self.cap)?;
            self.counters
                .orbit_weights_expanded
                .fetch_add(orbit.len() as u64, Ordering::Relaxed);
            local.clear();
            for w in &orbit {
                for (idx, (lam, _)) in terms.iter().enumerate() {
                    v.clear();
                    v.extend(lam.coords().iter().zip(w).map(|(x, y)| x + y));
                    if let Some((sign, dom)) = self.rs.reduce_rho_raw(&v) {
                        *local.entry((idx, dom)).or_insert(0) += sign as i64;
                    }
                }
            }
            for ((idx, dom), n) in local.drain() {
                if n != 0 {
                    *total.entry(dom).or_default() += terms[idx].1 * m * n;
                }
            }
        }
        let entries = total
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(c, m)| (self.rs.wrap(c), m))
            .collect();
        Ok(WeylSum::from_checked(Arc::clone(&self.rs), entries))
    }

    /// `Σ |c_λ| · dim ∇(λ)`: the number of weights a full expansion would visit.
    fn expansion_cost(&self, s: &WeylSum) -> BigInt {
        s.iter()
            .map(|(lam, c)| c.abs() * weyl_dim_raw(&self.rs, lam.coords()))
            .sum()
    }

    /// Tensor product, expanding the factor with fewer weights.
    pub fn tensor(&self, a: &WeylSum, b: &WeylSum) -> Result<WeylSum> {
        self.same(a.system())?;
        self.same(b.system())?;
        let (keep, expand) = if self.expansion_cost(a) <= self.expansion_cost(b) {
            (b, a)
        } else {
            (a, b)
        };
        self.klimyk(keep, &self.to_weights(expand)?, 1)
    }

    /// Adams operation `ψ^k`: every weight scaled by `k`.
    pub fn adams(&self, k: u32, s: &WeylSum) -> Result<WeylSum> {
        if k == 0 {
            return Err(Error::Precondition("Adams operation needs k ≥ 1".into()));
        }
        let unit = WeylSum::single(Arc::clone(&self.rs), self.rs.zero())?;
        self.klimyk(&unit, &self.to_weights(s)?, k as i32)
    }

    /// Newton recursion `n·x_n = Σ_{i=1}^{n} ε_i x_{n−i} ψ^i(s)`.
    fn newton(&self, n: u32, s: &WeylSum, alternating: bool, what: &str) -> Result<WeylSum> {
        self.same(s.system())?;
        let weights = self.to_weights(s)?;
        let mut seq = vec![WeylSum::single(Arc::clone(&self.rs), self.rs.zero())?];
        for m in 1..=n {
            let mut acc = WeylSum::zero(Arc::clone(&self.rs));
            for i in 1..=m {
                let term = self.klimyk(&seq[(m - i) as usize], &weights, i as i32)?;
                let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
                acc.add_scaled(&term, &BigInt::from(sign));
            }
            let div = BigInt::from(m);
            let mut entries = BTreeMap::new();
            for (lam, c) in acc.iter() {
                let (q, r) = c.div_rem(&div);
                if !r.is_zero() {
                    return Err(Error::InexactDivision(format!(
                        "{what} power {m}: coefficient {c} at {lam} not divisible by {m}"
                    )));
                }
                entries.insert(lam.clone(), q);
            }
            seq.push(WeylSum::from_checked(Arc::clone(&self.rs), entries));
        }
        Ok(seq.pop().expect("nonempty"))
    }

    /// Exterior power `∧^k`.
    pub fn alt_power(&self, k: u32, s: &WeylSum) -> Result<WeylSum> {
        self.newton(k, s, true, "exterior")
    }

    /// Symmetric power `S^k`.
    pub fn sym_power(&self, k: u32, s: &WeylSum) -> Result<WeylSum> {
        self.newton(k, s, false, "symmetric")
    }

    /// `Σ c_λ · dim ∇(λ)`.
    pub fn dim_of(&self, s: &WeylSum) -> Result<BigInt> {
        self.same(s.system())?;
        Ok(s.iter()
            .map(|(lam, c)| c * weyl_dim_raw(&self.rs, lam.coords()))
            .sum())
    }
}

fn calc_for(rs: &Arc<RootSystem>) -> CharCalc {
    CharCalc::new(Arc::clone(rs))
}

pub fn to_weights(s: &WeylSum) -> Result<DominantCharacter> {
    calc_for(s.system()).to_weights(s)
}

pub fn decompose(ch: &DominantCharacter) -> Result<WeylSum> {
    calc_for(ch.system()).decompose(ch)
}

pub fn tensor(a: &WeylSum, b: &WeylSum) -> Result<WeylSum> {
    calc_for(a.system()).tensor(a, b)
}

pub fn adams(k: u32, s: &WeylSum) -> Result<WeylSum> {
    calc_for(s.system()).adams(k, s)
}

pub fn alt_power(k: u32, s: &WeylSum) -> Result<WeylSum> {
    calc_for(s.system()).alt_power(k, s)
}

pub fn sym_power(k: u32, s: &WeylSum) -> Result<WeylSum> {
    calc_for(s.system()).sym_power(k, s)
}

pub fn dim_of(s: &WeylSum) -> BigInt {
    s.iter()
        .map(|(lam, c)| c * weyl_dim_raw(s.system(), lam.coords()))
        .sum()
}

/// `χ(λ)` for each of the given dominant weights with coefficient one.
pub fn weyl_sum_of(rs: &Arc<RootSystem>, weights: &[Weight]) -> Result<WeylSum> {
    let mut s = WeylSum::zero(Arc::clone(rs));
    for w in weights {
        s.add_term(w.clone(), BigInt::one())?;
    }
    Ok(s)
}
