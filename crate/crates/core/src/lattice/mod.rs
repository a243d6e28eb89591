//! Finite causally convex regions of the lattice cylinder `Z x Z_L`.
//!
//! A site `(t, x)` causally precedes `(t+1, x)` and `(t+1, x±1)`. The circumference
//! `L = 0` encodes the one-dimensional model: a single spatial point.

mod literal;
mod morphism;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use literal::parse_spacetime;
pub use morphism::{causally_disjoint, is_cauchy_morphism, LocMorphism};

pub type SiteSet = BTreeSet<Site>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("site {0} is not in the spacetime")]
    SiteNotInSpacetime(Site),
    #[error("morphisms have different targets")]
    TargetMismatch,
    #[error("circumference mismatch: {0} vs {1}")]
    CircumferenceMismatch(u32, u32),
    #[error("empty site set")]
    Empty,
    #[error("site set is not causally convex: {0} lies on a causal chain between sites")]
    NotCausallyConvex(Site),
    #[error("site set is not connected")]
    Disconnected,
    #[error("site set has fewer than two time rows")]
    TooThin,
    #[error("translated site {0} is outside the target")]
    NotContained(Site),
    #[error("row t={0} is not a Cauchy row")]
    NotACauchyRow(i64),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("cannot parse spacetime literal: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub t: i64,
    pub x: i64,
}

impl Site {
    pub const fn new(t: i64, x: i64) -> Self {
        Self { t, x }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.x)
    }
}

/// Spacetime translation; `dx` is taken modulo the circumference where applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Shift {
    pub dt: i64,
    pub dx: i64,
}

impl Shift {
    pub const IDENTITY: Shift = Shift { dt: 0, dx: 0 };

    pub const fn new(dt: i64, dx: i64) -> Self {
        Self { dt, dx }
    }

    /// Representative with `dx` reduced into `[0, period)`.
    pub fn normalized(self, l: u32) -> Self {
        Self { dt: self.dt, dx: wrap(self.dx, l) }
    }

    /// `self` after `other`.
    pub fn then(self, other: Shift, l: u32) -> Self {
        Shift::new(self.dt + other.dt, self.dx + other.dx).normalized(l)
    }

    pub fn inverse(self, l: u32) -> Self {
        Shift::new(-self.dt, -self.dx).normalized(l)
    }

    pub fn apply(self, s: Site, l: u32) -> Site {
        Site::new(s.t + self.dt, wrap(s.x + self.dx, l))
    }
}

/// Number of distinct spatial positions.
pub fn period(l: u32) -> i64 {
    i64::from(l.max(1))
}

pub fn wrap(x: i64, l: u32) -> i64 {
    x.rem_euclid(period(l))
}

/// Immediate causal successors on the ambient cylinder.
pub fn successors(s: Site, l: u32) -> impl Iterator<Item = Site> {
    neighbours(s, 1, l)
}

/// Immediate causal predecessors on the ambient cylinder.
pub fn predecessors(s: Site, l: u32) -> impl Iterator<Item = Site> {
    neighbours(s, -1, l)
}

fn neighbours(s: Site, dt: i64, l: u32) -> impl Iterator<Item = Site> {
    let mut xs: Vec<i64> = [0, 1, -1].iter().map(|d| wrap(s.x + d, l)).collect();
    xs.sort_unstable();
    xs.dedup();
    xs.into_iter().map(move |x| Site::new(s.t + dt, x))
}

/// A region of the cylinder: causally convex, connected, at least two rows thick.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSpacetime {
    l: u32,
    sites: SiteSet,
}

impl LatticeSpacetime {
    pub fn new(l: u32, sites: impl IntoIterator<Item = Site>) -> Result<Self, LatticeError> {
        let sites: SiteSet = sites.into_iter().map(|s| Site::new(s.t, wrap(s.x, l))).collect();
        if sites.is_empty() {
            return Err(LatticeError::Empty);
        }
        let first = *sites.first().expect("nonempty");
        let last = *sites.last().expect("nonempty");
        if first.t == last.t {
            return Err(LatticeError::TooThin);
        }
        if !is_connected(&sites, l) {
            return Err(LatticeError::Disconnected);
        }
        if let Some(w) = ambient_convexity_witness(&sites, l) {
            return Err(LatticeError::NotCausallyConvex(w));
        }
        Ok(Self { l, sites })
    }

    /// Full rows `t0..=t1`.
    pub fn slab(l: u32, t0: i64, t1: i64) -> Result<Self, LatticeError> {
        let p = period(l);
        Self::new(l, (t0..=t1).flat_map(|t| (0..p).map(move |x| Site::new(t, x))))
    }

    /// `J⁺(bottom) ∩ J⁻(bottom + (2k, 0))` on the ambient cylinder.
    pub fn diamond(l: u32, bottom: Site, k: i64) -> Result<Self, LatticeError> {
        let sites = (0..=2 * k).flat_map(|dt| {
            let half = dt.min(2 * k - dt);
            (-half..=half).map(move |d| Site::new(bottom.t + dt, bottom.x + d))
        });
        Self::new(l, sites)
    }

    pub fn circumference(&self) -> u32 {
        self.l
    }

    pub fn period(&self) -> i64 {
        period(self.l)
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, s: Site) -> bool {
        self.sites.contains(&s)
    }

    pub fn t_min(&self) -> i64 {
        self.sites.first().expect("nonempty").t
    }

    pub fn t_max(&self) -> i64 {
        self.sites.last().expect("nonempty").t
    }

    /// Spatial positions present in row `t`, ascending.
    pub fn row(&self, t: i64) -> Vec<i64> {
        self.sites.range(Site::new(t, i64::MIN)..=Site::new(t, i64::MAX)).map(|s| s.x).collect()
    }

    pub fn rows(&self) -> BTreeMap<i64, Vec<i64>> {
        let mut out: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for s in &self.sites {
            out.entry(s.t).or_default().push(s.x);
        }
        out
    }

    pub fn is_full_row(&self, t: i64) -> bool {
        self.row(t).len() as i64 == self.period()
    }

    /// Every row full.
    pub fn is_slab(&self) -> bool {
        (self.t_min()..=self.t_max()).all(|t| self.is_full_row(t))
    }

    /// Row `t0` meets every inextensible causal chain exactly once.
    ///
    /// Chains climb one row per step, so this holds iff every minimal site lies
    /// at or below `t0` and every maximal site at or above it.
    pub fn is_cauchy_row(&self, t0: i64) -> bool {
        if self.row(t0).is_empty() {
            return false;
        }
        self.sites.iter().all(|&s| {
            let minimal_ok = s.t <= t0 || predecessors(s, self.l).any(|p| self.contains(p));
            let maximal_ok = s.t >= t0 || successors(s, self.l).any(|p| self.contains(p));
            minimal_ok && maximal_ok
        })
    }

    pub fn cauchy_rows(&self) -> Vec<i64> {
        (self.t_min()..=self.t_max()).filter(|&t| self.is_cauchy_row(t)).collect()
    }

    /// Sites whose full five-point stencil lies in the region.
    pub fn stencil_interior(&self) -> SiteSet {
        self.sites
            .iter()
            .copied()
            .filter(|s| stencil(*s, self.l).iter().all(|p| self.contains(*p)))
            .collect()
    }

    pub fn translate(&self, shift: Shift) -> Self {
        Self { l: self.l, sites: self.sites.iter().map(|&s| shift.apply(s, self.l)).collect() }
    }

    /// The sub-spacetime on `sites`, which must be a valid region inside `self`.
    pub fn restrict(&self, sites: &SiteSet) -> Result<Self, LatticeError> {
        if let Some(s) = sites.iter().find(|s| !self.contains(**s)) {
            return Err(LatticeError::SiteNotInSpacetime(*s));
        }
        Self::new(self.l, sites.iter().copied())
    }

    fn check_subset(&self, s: &SiteSet) -> Result<(), LatticeError> {
        match s.iter().find(|p| !self.contains(**p)) {
            Some(p) => Err(LatticeError::SiteNotInSpacetime(*p)),
            None => Ok(()),
        }
    }
}

/// The five stencil sites of the Klein-Gordon operator at `s` (deduplicated).
pub fn stencil(s: Site, l: u32) -> Vec<Site> {
    let mut v = vec![
        s,
        Site::new(s.t + 1, s.x),
        Site::new(s.t - 1, s.x),
        Site::new(s.t, wrap(s.x + 1, l)),
        Site::new(s.t, wrap(s.x - 1, l)),
    ];
    v.sort();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyRow {
    parent: LatticeSpacetime,
    t0: i64,
}

impl CauchyRow {
    pub fn new(parent: LatticeSpacetime, t0: i64) -> Result<Self, LatticeError> {
        if parent.is_cauchy_row(t0) {
            Ok(Self { parent, t0 })
        } else {
            Err(LatticeError::NotACauchyRow(t0))
        }
    }

    pub fn parent(&self) -> &LatticeSpacetime {
        &self.parent
    }

    pub fn t0(&self) -> i64 {
        self.t0
    }

    pub fn sites(&self) -> Vec<Site> {
        self.parent.row(self.t0).into_iter().map(|x| Site::new(self.t0, x)).collect()
    }
}

impl Serialize for LatticeSpacetime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        literal::SpacetimeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSpacetime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        literal::SpacetimeJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LatticeSpacetime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", literal::to_text(self))
    }
}

/// `J⁺_M(S)`: sites of `m` reachable from `s` by future-directed steps inside `m`.
pub fn causal_future(m: &LatticeSpacetime, s: &SiteSet) -> Result<SiteSet, LatticeError> {
    m.check_subset(s)?;
    Ok(closure(&m.sites, s, m.l, 1))
}

/// `J⁻_M(S)`.
pub fn causal_past(m: &LatticeSpacetime, s: &SiteSet) -> Result<SiteSet, LatticeError> {
    m.check_subset(s)?;
    Ok(closure(&m.sites, s, m.l, -1))
}

/// `J_M(S) = J⁺_M(S) ∪ J⁻_M(S)`.
pub fn causal_shadow(m: &LatticeSpacetime, s: &SiteSet) -> Result<SiteSet, LatticeError> {
    let mut j = causal_future(m, s)?;
    j.extend(causal_past(m, s)?);
    Ok(j)
}

/// True iff `J⁺_M(S) ∩ J⁻_M(S) ⊆ S`.
pub fn is_causally_convex(m: &LatticeSpacetime, s: &SiteSet) -> Result<bool, LatticeError> {
    Ok(convexity_witness(m, s)?.is_none())
}

/// A site of `J⁺_M(S) ∩ J⁻_M(S)` outside `S`, if any.
pub fn convexity_witness(m: &LatticeSpacetime, s: &SiteSet) -> Result<Option<Site>, LatticeError> {
    let fut = causal_future(m, s)?;
    let past = causal_past(m, s)?;
    Ok(fut.intersection(&past).find(|p| !s.contains(p)).copied())
}

/// Row sweep: steps only move one row, so scanning rows in order is a complete BFS.
fn closure(domain: &SiteSet, seeds: &SiteSet, l: u32, dir: i64) -> SiteSet {
    let mut out: SiteSet = SiteSet::new();
    let mut queue: VecDeque<Site> = seeds.iter().copied().collect();
    while let Some(p) = queue.pop_front() {
        if !out.insert(p) {
            continue;
        }
        for q in neighbours(p, dir, l) {
            if domain.contains(&q) && !out.contains(&q) {
                queue.push_back(q);
            }
        }
    }
    out
}

/// Convexity in the ambient cylinder, restricted to the relevant time window.
fn ambient_convexity_witness(sites: &SiteSet, l: u32) -> Option<Site> {
    let t0 = sites.first()?.t;
    let t1 = sites.last()?.t;
    let p = period(l);
    let window: SiteSet = (t0..=t1).flat_map(|t| (0..p).map(move |x| Site::new(t, x))).collect();
    let fut = closure(&window, sites, l, 1);
    let past = closure(&window, sites, l, -1);
    fut.intersection(&past).find(|q| !sites.contains(q)).copied()
}

fn is_connected(sites: &SiteSet, l: u32) -> bool {
    let Some(&start) = sites.first() else { return true };
    let mut seen = SiteSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for q in successors(p, l).chain(predecessors(p, l)) {
            if sites.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == sites.len()
}

#[cfg(test)]
mod tests;
