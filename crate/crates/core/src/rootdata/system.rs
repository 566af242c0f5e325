use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::spec::{Family, RootSystemSpec, SimpleType, SystemTag};
use super::weight::{Coords, Weight};
use crate::error::{Error, Result};

/// Default bound on explicit Weyl orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// A positive root, stored in both bases plus its coroot in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub weight_form: Weight,
    pub root_coords: Coords,
    /// `β∨` in the basis of simple coroots; `⟨λ, β∨⟩ = Σ λ_i coroot_i`.
    pub coroot: Coords,
    pub is_long: bool,
    pub component: usize,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.root_coords.iter().sum()
    }

    /// `⟨ρ, β∨⟩`, the height of the coroot.
    pub fn coheight(&self) -> i32 {
        self.coroot.iter().sum()
    }

    /// `⟨λ, β∨⟩` for raw fundamental-weight coordinates.
    #[inline]
    pub fn pair(&self, coords: &[i32]) -> i64 {
        self.coroot
            .iter()
            .zip(coords)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }
}

/// Per-component bookkeeping inside a (possibly product) root system.
#[derive(Debug, Clone)]
pub struct Component {
    pub kind: SimpleType,
    pub offset: usize,
    pub highest_root: usize,
    pub highest_short_root: usize,
    pub coxeter_number: u32,
}

impl Component {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.kind.rank
    }
}

/// Outcome of moving `μ + ρ` into the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoReduction {
    /// `μ + ρ` lies on a reflecting hyperplane; `χ(μ) = 0`.
    Singular,
    /// `χ(μ) = sign · χ(dominant)`.
    Regular { sign: i32, dominant: Weight },
}

/// Cartan data, positive roots and Weyl-group machinery for a product of simple types,
/// numbered as in Bourbaki's tables.
#[derive(Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    tag: SystemTag,
    rank: usize,
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`; row `i` is the weight form of `α_i`.
    cartan: Vec<Vec<i32>>,
    /// Relative squared lengths of simple roots (shortest root in a component = 1).
    norms: Vec<i32>,
    positive_roots: Vec<Root>,
    components: Vec<Component>,
    component_systems: Vec<Arc<RootSystem>>,
    rho: Weight,
    weyl_order: BigUint,
    /// `inv_scaled[i][j] / inv_denom = (C⁻¹)[i][j]`.
    inv_scaled: Vec<Vec<i64>>,
    inv_denom: i64,
    /// Invariant form on fundamental weights times `form_denom`; long roots have length 2.
    form_scaled: Vec<Vec<i64>>,
    form_denom: i64,
}

fn simple_cartan(t: SimpleType) -> (Vec<Vec<i32>>, Vec<i32>) {
    let n = t.rank;
    let mut c = vec![vec![0i32; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |a: usize, b: usize| {
        c[a][b] = -1;
        c[b][a] = -1;
    };
    let mut norms = vec![1; n];
    match t.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::B => {
            (0..n - 1).for_each(|i| link(i, i + 1));
            norms = vec![2; n];
            norms[n - 1] = 1;
        }
        Family::C => {
            (0..n - 1).for_each(|i| link(i, i + 1));
            norms[n - 1] = 2;
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
            norms = vec![2, 2, 1, 1];
        }
        Family::G => {
            link(0, 1);
            norms = vec![1, 3];
        }
    }
    // Double and triple bonds: ⟨long, short∨⟩ = -norm ratio.
    for i in 0..n {
        for j in 0..n {
            if c[i][j] != 0 && i != j && norms[i] > norms[j] {
                c[i][j] = -(norms[i] / norms[j]);
            }
        }
    }
    (c, norms)
}

fn coxeter_number(t: SimpleType) -> u32 {
    let n = t.rank as u32;
    match t.family {
        Family::A => n + 1,
        Family::B | Family::C => 2 * n,
        Family::D => 2 * n - 2,
        Family::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        Family::F => 12,
        Family::G => 6,
    }
}

type Q = Ratio<i64>;

fn invert(m: &[Vec<i32>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i64)).collect())
        .collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Cartan matrix");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    inv
}

fn scale_to_integers(m: &[Vec<Q>]) -> (Vec<Vec<i64>>, i64) {
    let denom = m
        .iter()
        .flatten()
        .fold(1i64, |acc, q| acc.lcm(q.denom()));
    let scaled = m
        .iter()
        .map(|r| r.iter().map(|q| (q * denom).to_integer()).collect())
        .collect();
    (scaled, denom)
}

/// `|W|` from the heights of positive roots: the number of exponents `≥ k` equals the
/// number of positive roots of height `k`.
pub(crate) fn weyl_order_from_heights(heights: impl IntoIterator<Item = i32>) -> BigUint {
    let mut counts: Vec<u64> = Vec::new();
    for h in heights {
        let h = h as usize;
        if counts.len() <= h {
            counts.resize(h + 1, 0);
        }
        counts[h] += 1;
    }
    let mut order = BigUint::one();
    for k in 1..counts.len() {
        let next = counts.get(k + 1).copied().unwrap_or(0);
        let exps_equal_k = counts[k] - next;
        for _ in 0..exps_equal_k {
            order *= BigUint::from(k as u64 + 1);
        }
    }
    order
}

impl RootSystem {
    /// Builds Cartan data and enumerates positive roots by root-string closure.
    pub fn build(spec: &RootSystemSpec) -> Result<Arc<RootSystem>> {
        let spec = RootSystemSpec::new(spec.components().to_vec())?;
        let tag = spec.tag();
        let rank = spec.rank();
        let mut cartan = vec![vec![0i32; rank]; rank];
        let mut norms = vec![0i32; rank];
        let mut offset = 0;
        let mut comp_of = vec![0usize; rank];
        for (ci, t) in spec.components().iter().enumerate() {
            let (c, s) = simple_cartan(*t);
            for i in 0..t.rank {
                norms[offset + i] = s[i];
                comp_of[offset + i] = ci;
                for j in 0..t.rank {
                    cartan[offset + i][offset + j] = c[i][j];
                }
            }
            offset += t.rank;
        }

        let positive = enumerate_positive_roots(&cartan);
        let mut comp_max_norm = vec![0i32; spec.components().len()];
        for i in 0..rank {
            comp_max_norm[comp_of[i]] = comp_max_norm[comp_of[i]].max(norms[i]);
        }

        let mut positive_roots = Vec::with_capacity(positive.len());
        for rc in positive {
            let component = comp_of[rc.iter().position(|&x| x != 0).unwrap()];
            let mut twice_len = 0i32;
            for j in 0..rank {
                for k in 0..rank {
                    twice_len += rc[j] * rc[k] * cartan[j][k] * norms[k];
                }
            }
            let len = twice_len / 2;
            let coroot: Coords = (0..rank)
                .map(|j| {
                    debug_assert_eq!((rc[j] * norms[j]) % len, 0);
                    rc[j] * norms[j] / len
                })
                .collect();
            let wf: Coords = (0..rank)
                .map(|i| (0..rank).map(|j| rc[j] * cartan[j][i]).sum())
                .collect();
            positive_roots.push(Root {
                weight_form: Weight::from_parts(tag, wf),
                root_coords: rc,
                coroot,
                is_long: len == comp_max_norm[component],
                component,
            });
        }
        positive_roots.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.root_coords.cmp(&a.root_coords))
        });

        let mut components = Vec::new();
        let mut offset = 0;
        for (ci, t) in spec.components().iter().enumerate() {
            let in_comp = |r: &&Root| r.component == ci;
            let highest_root = positive_roots
                .iter()
                .enumerate()
                .filter(|(_, r)| in_comp(r))
                .max_by_key(|(_, r)| r.height())
                .map(|(i, _)| i)
                .unwrap();
            let highest_short_root = positive_roots
                .iter()
                .enumerate()
                .filter(|(_, r)| in_comp(r))
                .filter(|(_, r)| {
                    let norm = norms_of(r, &norms);
                    norm == 1 || comp_max_norm[ci] == 1
                })
                .max_by_key(|(_, r)| r.height())
                .map(|(i, _)| i)
                .unwrap();
            components.push(Component {
                kind: *t,
                offset,
                highest_root,
                highest_short_root,
                coxeter_number: coxeter_number(*t),
            });
            offset += t.rank;
        }

        let inv = invert(&cartan);
        let (inv_scaled, inv_denom) = scale_to_integers(&inv);
        let form: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|k| inv[i][k] * Q::new(norms[k] as i64, comp_max_norm[comp_of[k]] as i64))
                    .collect()
            })
            .collect();
        let (form_scaled, form_denom) = scale_to_integers(&form);

        let weyl_order = weyl_order_from_heights(positive_roots.iter().map(Root::height));
        let rho = Weight::from_parts(tag, std::iter::repeat(1).take(rank).collect());

        let component_systems = if spec.components().len() > 1 {
            spec.components()
                .iter()
                .map(|t| RootSystem::build(&RootSystemSpec::new(vec![*t]).unwrap()))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };

        Ok(Arc::new(RootSystem {
            spec,
            tag,
            rank,
            cartan,
            norms,
            positive_roots,
            components,
            component_systems,
            rho,
            weyl_order,
            inv_scaled,
            inv_denom,
            form_scaled,
            form_denom,
        }))
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn norms(&self) -> &[i32] {
        &self.norms
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_order(&self) -> &BigUint {
        &self.weyl_order
    }

    pub fn highest_root(&self, component: usize) -> &Root {
        &self.positive_roots[self.components[component].highest_root]
    }

    pub fn highest_short_root(&self, component: usize) -> &Root {
        &self.positive_roots[self.components[component].highest_short_root]
    }

    /// Simple root `α_i` (0-based) as a [`Root`].
    pub fn simple_root(&self, i: usize) -> &Root {
        self.positive_roots
            .iter()
            .find(|r| r.height() == 1 && r.root_coords[i] == 1)
            .expect("simple root present")
    }

    /// Simple systems of the components (the system itself when simple).
    pub fn component_systems(self: &Arc<Self>) -> Vec<Arc<RootSystem>> {
        if self.component_systems.is_empty() {
            vec![Arc::clone(self)]
        } else {
            self.component_systems.clone()
        }
    }

    /// Splits a weight into its per-component weights.
    pub fn split(self: &Arc<Self>, lam: &Weight) -> Vec<Weight> {
        let systems = self.component_systems();
        self.components
            .iter()
            .zip(systems)
            .map(|(c, s)| Weight::from_parts(s.tag(), lam.coords()[c.range()].iter().copied().collect()))
            .collect()
    }

    pub fn weight(&self, coords: &[i32]) -> Result<Weight> {
        if coords.len() != self.rank {
            return Err(Error::Parse(format!(
                "{} has rank {}, got {} coordinates",
                self.spec,
                self.rank,
                coords.len()
            )));
        }
        Ok(Weight::from_parts(self.tag, coords.iter().copied().collect()))
    }

    pub(crate) fn wrap(&self, coords: Coords) -> Weight {
        debug_assert_eq!(coords.len(), self.rank);
        Weight::from_parts(self.tag, coords)
    }

    pub fn parse_weight(&self, text: &str) -> Result<Weight> {
        Weight::parse(self.tag, text)
    }

    pub fn zero(&self) -> Weight {
        self.wrap(std::iter::repeat(0).take(self.rank).collect())
    }

    /// Fundamental weight `ϖ_i`, 1-based as in Bourbaki.
    pub fn fundamental(&self, i: usize) -> Weight {
        assert!(i >= 1 && i <= self.rank, "fundamental weight index out of range");
        let mut c: Coords = std::iter::repeat(0).take(self.rank).collect();
        c[i - 1] = 1;
        self.wrap(c)
    }

    pub fn check(&self, lam: &Weight) -> Result<()> {
        if lam.tag() != self.tag {
            return Err(Error::Mismatch {
                expected: self.spec.to_string(),
                found: lam.tag().to_string(),
            });
        }
        Ok(())
    }

    pub fn check_root(&self, alpha: &Root) -> Result<()> {
        self.check(&alpha.weight_form)
    }

    /// `⟨λ, α∨⟩`.
    pub fn pairing(&self, lam: &Weight, alpha: &Root) -> Result<i64> {
        self.check(lam)?;
        self.check_root(alpha)?;
        Ok(alpha.pair(lam.coords()))
    }

    /// `λ` in simple-root coordinates, scaled by [`Self::inverse_denominator`].
    pub fn simple_root_coords_scaled(&self, coords: &[i32]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.inv_scaled[j][i] * coords[j] as i64)
                    .sum()
            })
            .collect()
    }

    pub fn inverse_denominator(&self) -> i64 {
        self.inv_denom
    }

    /// `λ` in simple-root coordinates, exactly.
    pub fn simple_root_coords(&self, lam: &Weight) -> Vec<Ratio<i64>> {
        self.simple_root_coords_scaled(lam.coords())
            .into_iter()
            .map(|x| Ratio::new(x, self.inv_denom))
            .collect()
    }

    /// Height (sum of simple-root coordinates) times [`Self::inverse_denominator`].
    pub fn height_scaled(&self, coords: &[i32]) -> i64 {
        self.simple_root_coords_scaled(coords).iter().sum()
    }

    /// `μ ≤ λ` in the rational cone order.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> Result<bool> {
        self.check(mu)?;
        self.check(lam)?;
        Ok(self.cone_leq_raw(mu.coords(), lam.coords()))
    }

    pub fn dominance_lt(&self, mu: &Weight, lam: &Weight) -> Result<bool> {
        Ok(mu != lam && self.dominance_leq(mu, lam)?)
    }

    pub(crate) fn cone_leq_raw(&self, mu: &[i32], lam: &[i32]) -> bool {
        let diff: Coords = lam.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.simple_root_coords_scaled(&diff).iter().all(|&x| x >= 0)
    }

    /// Whether `λ − μ` lies in the root lattice.
    pub fn same_root_lattice_coset(&self, mu: &Weight, lam: &Weight) -> Result<bool> {
        self.check(mu)?;
        self.check(lam)?;
        let diff = lam - mu;
        Ok(self
            .simple_root_coords_scaled(diff.coords())
            .iter()
            .all(|x| x % self.inv_denom == 0))
    }

    /// Invariant form scaled by [`Self::form_denominator`].
    pub fn form_scaled(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let row = &self.form_scaled[i];
            let mut t = 0i64;
            for k in 0..self.rank {
                t += row[k] * b[k] as i64;
            }
            s += a[i] as i64 * t;
        }
        s
    }

    pub fn form_denominator(&self) -> i64 {
        self.form_denom
    }

    /// `(λ, μ)` with long roots of squared length 2 in every component.
    pub fn form(&self, a: &Weight, b: &Weight) -> Result<Ratio<i64>> {
        self.check(a)?;
        self.check(b)?;
        Ok(Ratio::new(self.form_scaled(a.coords(), b.coords()), self.form_denom))
    }

    #[inline]
    pub(crate) fn reflect_simple_raw(&self, v: &mut [i32], i: usize) {
        let k = v[i];
        if k != 0 {
            for (x, c) in v.iter_mut().zip(&self.cartan[i]) {
                *x -= k * c;
            }
        }
    }

    /// Moves `v` into the dominant chamber by simple reflections; returns the number used.
    pub(crate) fn to_dominant_raw(&self, v: &mut [i32]) -> usize {
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect_simple_raw(v, i);
            steps += 1;
        }
        steps
    }

    /// The dominant weight in the Weyl orbit of `λ`.
    pub fn orbit_rep(&self, lam: &Weight) -> Result<Weight> {
        self.check(lam)?;
        let mut v = lam.coords().iter().copied().collect::<Coords>();
        self.to_dominant_raw(&mut v);
        Ok(self.wrap(v))
    }

    /// Applies a simple reflection `s_i` (0-based) to a weight.
    pub fn reflect_simple(&self, lam: &Weight, i: usize) -> Result<Weight> {
        self.check(lam)?;
        let mut v: Coords = lam.coords().iter().copied().collect();
        self.reflect_simple_raw(&mut v, i);
        Ok(self.wrap(v))
    }

    /// Raw form of [`Self::reduce_rho`]: `Some((sign, dominant))` or `None` when singular.
    #[inline]
    pub(crate) fn reduce_rho_raw(&self, mu: &[i32]) -> Option<(i32, Coords)> {
        let mut v: Coords = mu.iter().map(|&x| x + 1).collect();
        let steps = self.to_dominant_raw(&mut v);
        if v.iter().any(|&x| x == 0) {
            return None;
        }
        for x in v.iter_mut() {
            *x -= 1;
        }
        Some((if steps % 2 == 0 { 1 } else { -1 }, v))
    }

    /// Normalizes `χ(μ)` for arbitrary `μ` via the dot action.
    pub fn reduce_rho(&self, mu: &Weight) -> Result<RhoReduction> {
        self.check(mu)?;
        Ok(match self.reduce_rho_raw(mu.coords()) {
            None => RhoReduction::Singular,
            Some((sign, dom)) => RhoReduction::Regular {
                sign,
                dominant: self.wrap(dom),
            },
        })
    }

    /// `λ* = −w₀λ`.
    pub fn star(&self, lam: &Weight) -> Result<Weight> {
        self.orbit_rep(&-lam)
    }

    /// Order of the stabilizer of a dominant weight: the parabolic subgroup on its zero coordinates.
    pub fn stabilizer_order(&self, dominant: &[i32]) -> BigUint {
        weyl_order_from_heights(
            self.positive_roots
                .iter()
                .filter(|r| {
                    r.root_coords
                        .iter()
                        .zip(dominant)
                        .all(|(&c, &x)| c == 0 || x == 0)
                })
                .map(Root::height),
        )
    }

    /// Size of the Weyl orbit through `λ`, without enumerating it.
    pub fn orbit_size(&self, lam: &Weight) -> Result<BigUint> {
        let dom = self.orbit_rep(lam)?;
        Ok(&self.weyl_order / self.stabilizer_order(dom.coords()))
    }

    pub(crate) fn orbit_size_raw(&self, dominant: &[i32]) -> BigUint {
        &self.weyl_order / self.stabilizer_order(dominant)
    }

    /// All weights in the Weyl orbit of `λ`, dominant representative first.
    pub fn weyl_orbit(&self, lam: &Weight, cap: usize) -> Result<Vec<Weight>> {
        let dom = self.orbit_rep(lam)?;
        Ok(self
            .orbit_raw(dom.coords(), cap)?
            .into_iter()
            .map(|c| self.wrap(c))
            .collect())
    }

    pub(crate) fn check_orbit_cap(&self, dominant: &[i32], cap: usize) -> Result<()> {
        let size = self.orbit_size_raw(dominant);
        if size > BigUint::from(cap) {
            return Err(Error::OrbitCap {
                weight: self.wrap(dominant.iter().copied().collect()).to_string(),
                size: size.to_string(),
                cap,
            });
        }
        Ok(())
    }

    /// Orbit enumeration from a dominant weight, level by level in reflection length.
    pub(crate) fn orbit_raw(&self, dominant: &[i32], cap: usize) -> Result<Vec<Coords>> {
        self.check_orbit_cap(dominant, cap)?;
        let start: Coords = dominant.iter().copied().collect();
        let mut out = vec![start.clone()];
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut seen: HashSet<Coords> = HashSet::new();
            let mut next = Vec::new();
            for v in &frontier {
                for i in 0..self.rank {
                    if v[i] > 0 {
                        let mut w = v.clone();
                        self.reflect_simple_raw(&mut w, i);
                        if seen.insert(w.clone()) {
                            next.push(w);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// Index of a positive root with the given root coordinates.
    pub fn find_root(&self, root_coords: &[i32]) -> Option<&Root> {
        self.positive_roots
            .iter()
            .find(|r| r.root_coords.as_slice() == root_coords)
    }

    /// The linear map `λ ↦ ⟨λ, β∨⟩` on all positive roots, as a lookup table keyed by root coordinates.
    pub fn root_index(&self) -> HashMap<Coords, usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.root_coords.clone(), i))
            .collect()
    }
}

fn norms_of(r: &Root, norms: &[i32]) -> i32 {
    // squared length relative to shortest root: recovered from the coroot scaling
    let j = r.root_coords.iter().position(|&x| x != 0).unwrap();
    r.root_coords[j] * norms[j] / r.coroot[j]
}

/// Positive roots in simple-root coordinates, by the root-string criterion.
fn enumerate_positive_roots(cartan: &[Vec<i32>]) -> Vec<Coords> {
    let n = cartan.len();
    let mut all: HashSet<Coords> = HashSet::new();
    let mut layer: Vec<Coords> = (0..n)
        .map(|i| {
            let mut c: Coords = std::iter::repeat(0).take(n).collect();
            c[i] = 1;
            c
        })
        .collect();
    all.extend(layer.iter().cloned());
    let mut roots = layer.clone();
    while !layer.is_empty() {
        let mut next: Vec<Coords> = Vec::new();
        let mut seen = HashSet::new();
        for beta in &layer {
            for i in 0..n {
                // ⟨β, α_i∨⟩
                let pairing: i32 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut r = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= r + 1;
                    if down[i] >= 0 && all.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) && seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}
