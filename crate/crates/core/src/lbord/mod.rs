//! The lattice Lorentzian bordism pseudo-category.
//!
//! Objects are slabs `M` with a marked row `Σ`; vertical morphisms are germs of
//! translations; horizontal morphisms are bordisms `(N, i0, i1)` with collar
//! regions `V0`, `V1`; 2-cells are germs of translations between bordisms.
//! Every region is a slab of the cylinder, so it is described by its row range,
//! and every map is a translation stored as a [`Shift`].

mod cells;
mod compose;
mod instance;
mod literal;


use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{period, CauchyRow, LatticeError, LatticeSpacetime, Shift};

pub use cells::{canonical_globular, companion, weak_inverse, CompanionCells, TwoCell};
pub use compose::{
    compose_along, default_small_collars, glued_site_count, hcompose, hcompose_cells, resize_collars,
};
pub use instance::{class_key, export_instance, truncate, ClassKey, InstanceConfig, LBordInstance};
pub use literal::{BordismJson, ObjectJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LBordError {
    #[error("objects do not match")]
    ObjectMismatch,
    #[error("2-cells are not horizontally composable: target germ differs from source germ")]
    CellMismatch,
    #[error("gluing is inconsistent: {0}")]
    GluingOverlapInconsistent(String),
    #[error("collar too small: {0}")]
    CollarTooSmall(String),
    #[error("region is not a slab of full rows")]
    NotASlab,
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error("invalid bordism: {0}")]
    InvalidBordism(String),
    #[error("invalid 2-cell: {0}")]
    InvalidCell(String),
    #[error("instance is not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An inclusive range of time rows, standing for the slab of full rows it spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rows {
    pub lo: i64,
    pub hi: i64,
}

impl Rows {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, t: i64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_rows(&self, other: Rows) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: Rows) -> Rows {
        Rows::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn shifted(&self, dt: i64) -> Rows {
        Rows::new(self.lo + dt, self.hi + dt)
    }

    /// Causal future of the rows inside `self`: everything from `from.lo` up.
    pub fn future_of(&self, from: Rows) -> Rows {
        Rows::new(from.lo, self.hi)
    }

    /// Causal past of the rows inside `self`: everything up to `from.hi`.
    pub fn past_of(&self, from: Rows) -> Rows {
        Rows::new(self.lo, from.hi)
    }

    pub fn spacetime(&self, l: u32) -> Result<LatticeSpacetime, LatticeError> {
        LatticeSpacetime::slab(l, self.lo, self.hi)
    }

    /// Row range of a slab; fails for any other region.
    pub fn of(m: &LatticeSpacetime) -> Result<Rows, LBordError> {
        if !m.is_slab() {
            return Err(LBordError::NotASlab);
        }
        Ok(Rows::new(m.t_min(), m.t_max()))
    }
}

impl fmt::Display for Rows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// `(M, Σ)`: a slab with a marked Cauchy row. The row above `Σ` must exist so
/// that the two-row collar `{Σ, Σ+1}` fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BordObject {
    l: u32,
    m: Rows,
    sigma: i64,
}

impl BordObject {
    pub fn new(m: &LatticeSpacetime, sigma: i64) -> Result<Self, LBordError> {
        let rows = Rows::of(m)?;
        CauchyRow::new(m.clone(), sigma)?;
        Self::slab(m.circumference(), rows.lo, rows.hi, sigma)
    }

    pub fn slab(l: u32, lo: i64, hi: i64, sigma: i64) -> Result<Self, LBordError> {
        if hi <= lo {
            return Err(LatticeError::TooThin.into());
        }
        if !(lo <= sigma && sigma < hi) {
            return Err(LBordError::CollarTooSmall(format!(
                "marked row {sigma} needs rows {sigma} and {} inside [{lo},{hi}]",
                sigma + 1
            )));
        }
        Ok(Self { l, m: Rows::new(lo, hi), sigma })
    }

    pub fn circumference(&self) -> u32 {
        self.l
    }

    pub fn rows(&self) -> Rows {
        self.m
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn spacetime(&self) -> LatticeSpacetime {
        self.m.spacetime(self.l).expect("validated slab")
    }

    pub fn cauchy_row(&self) -> CauchyRow {
        CauchyRow::new(self.spacetime(), self.sigma).expect("every row of a slab is Cauchy")
    }

    /// `{Σ, Σ+1}`, contained in every admissible collar.
    pub fn min_collar(&self) -> Rows {
        Rows::new(self.sigma, self.sigma + 1)
    }

    /// Admissible collars: sub-slabs of `M` containing `{Σ, Σ+1}`.
    pub fn collars(&self) -> Vec<Rows> {
        let mut out = Vec::new();
        for lo in self.m.lo..=self.sigma {
            for hi in self.sigma + 1..=self.m.hi {
                out.push(Rows::new(lo, hi));
            }
        }
        out
    }

    fn check_collar(&self, v: Rows) -> Result<(), LBordError> {
        if !self.m.contains_rows(v) || !v.contains_rows(self.min_collar()) {
            return Err(LBordError::CollarTooSmall(format!(
                "collar {v} must lie in {} and contain {}",
                self.m,
                self.min_collar()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BordObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, Σ={})", self.m, self.sigma)
    }
}

/// A germ `[W, g] : (M, Σ) → (M', Σ')` of translations with `g(Σ) = Σ'`.
///
/// The time shift is forced by the marked rows, so the canonical form is the
/// spatial shift alone; it is the restriction of `g` to [`Germ::domain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    src: BordObject,
    tgt: BordObject,
    dx: i64,
}

impl Germ {
    /// A representative `g : W → M'`; checks `W` is a collar mapped into `M'`.
    pub fn new(src: BordObject, tgt: BordObject, w: Rows, g: Shift) -> Result<Self, LBordError> {
        if src.l != tgt.l {
            return Err(LatticeError::CircumferenceMismatch(src.l, tgt.l).into());
        }
        src.check_collar(w)?;
        if g.dt != tgt.sigma - src.sigma {
            return Err(LBordError::InvalidGerm(format!(
                "time shift {} does not carry row {} to row {}",
                g.dt, src.sigma, tgt.sigma
            )));
        }
        if !tgt.m.contains_rows(w.shifted(g.dt)) {
            return Err(LBordError::InvalidGerm(format!("image of {w} leaves {}", tgt.m)));
        }
        Ok(Self::from_dx(src, tgt, g.dx))
    }

    pub fn from_dx(src: BordObject, tgt: BordObject, dx: i64) -> Self {
        Self { src, tgt, dx: crate::lattice::wrap(dx, src.l) }
    }

    pub fn identity(o: BordObject) -> Self {
        Self::from_dx(o, o, 0)
    }

    pub fn src(&self) -> BordObject {
        self.src
    }

    pub fn tgt(&self) -> BordObject {
        self.tgt
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn shift(&self) -> Shift {
        Shift::new(self.tgt.sigma - self.src.sigma, self.dx)
    }

    /// Canonical domain: `{Σ, Σ+1}`, plus `Σ−1` when it exists on both sides.
    pub fn domain(&self) -> Rows {
        let below = self.src.m.contains(self.src.sigma - 1) && self.tgt.m.contains(self.tgt.sigma - 1);
        Rows::new(self.src.sigma - i64::from(below), self.src.sigma + 1)
    }

    /// `self ∘ first`.
    pub fn vcompose(&self, first: &Germ) -> Result<Germ, LBordError> {
        if first.tgt != self.src {
            return Err(LBordError::ObjectMismatch);
        }
        Ok(Self::from_dx(first.src, self.tgt, first.dx + self.dx))
    }

    pub fn inverse(&self) -> Germ {
        Self::from_dx(self.tgt, self.src, -self.dx)
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.dx == 0
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[dt={}, dx={}]: {} -> {}", self.tgt.sigma - self.src.sigma, self.dx, self.src, self.tgt)
    }
}

/// A bordism `(N, i0, i1) : (M0, Σ0) ⇸ (M1, Σ1)` with collars `V0 ⊆ M0`, `V1 ⊆ M1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bordism {
    src: BordObject,
    tgt: BordObject,
    n: Rows,
    v0: Rows,
    v1: Rows,
    i0: Shift,
    i1: Shift,
}

impl Bordism {
    pub fn new(
        src: BordObject,
        tgt: BordObject,
        n: Rows,
        v0: Rows,
        v1: Rows,
        i0: Shift,
        i1: Shift,
    ) -> Result<Self, LBordError> {
        if src.l != tgt.l {
            return Err(LatticeError::CircumferenceMismatch(src.l, tgt.l).into());
        }
        if n.len() < 2 {
            return Err(LatticeError::TooThin.into());
        }
        src.check_collar(v0)?;
        tgt.check_collar(v1)?;
        if !n.contains_rows(v0.shifted(i0.dt)) || !n.contains_rows(v1.shifted(i1.dt)) {
            return Err(LBordError::InvalidBordism(format!("collar images must lie in N = {n}")));
        }
        let l = src.l;
        let b = Self { src, tgt, n, v0, v1, i0: i0.normalized(l), i1: i1.normalized(l) };
        if b.row1() < b.row0() {
            return Err(LBordError::InvalidBordism(format!(
                "outgoing row {} lies below incoming row {}",
                b.row1(),
                b.row0()
            )));
        }
        Ok(b)
    }

    /// `(M, id, id)`.
    pub fn unit(o: BordObject) -> Self {
        Self { src: o, tgt: o, n: o.m, v0: o.m, v1: o.m, i0: Shift::IDENTITY, i1: Shift::IDENTITY }
    }

    pub fn src(&self) -> BordObject {
        self.src
    }

    pub fn tgt(&self) -> BordObject {
        self.tgt
    }

    pub fn n(&self) -> Rows {
        self.n
    }

    pub fn v0(&self) -> Rows {
        self.v0
    }

    pub fn v1(&self) -> Rows {
        self.v1
    }

    pub fn i0(&self) -> Shift {
        self.i0
    }

    pub fn i1(&self) -> Shift {
        self.i1
    }

    pub fn circumference(&self) -> u32 {
        self.src.l
    }

    /// Row of `i0(Σ0)` in `N`.
    pub fn row0(&self) -> i64 {
        self.src.sigma + self.i0.dt
    }

    /// Row of `i1(Σ1)` in `N`.
    pub fn row1(&self) -> i64 {
        self.tgt.sigma + self.i1.dt
    }

    /// Number of time steps from the incoming to the outgoing surface.
    pub fn height(&self) -> i64 {
        self.row1() - self.row0()
    }

    /// Relative spatial offset of the two collar embeddings, modulo the period.
    pub fn twist(&self) -> i64 {
        crate::lattice::wrap(self.i1.dx - self.i0.dx, self.src.l)
    }

    /// `J⁺(i0 Σ0) ∩ J⁻(i1 Σ1)`, the rows every 2-cell must see.
    pub fn core(&self) -> Rows {
        Rows::new(self.row0(), self.row1())
    }

    pub fn spacetime(&self) -> LatticeSpacetime {
        self.n.spacetime(self.src.l).expect("validated slab")
    }

    /// Translate so that `i0(Σ0)` sits at row 0 with no spatial offset.
    pub fn normalizing_shift(&self) -> Shift {
        Shift::new(-self.row0(), -self.i0.dx).normalized(self.src.l)
    }

    pub fn translated(&self, t: Shift) -> Self {
        let l = self.src.l;
        Self { n: self.n.shifted(t.dt), i0: t.then(self.i0, l), i1: t.then(self.i1, l), ..*self }
    }

    pub fn normalized(&self) -> Self {
        self.translated(self.normalizing_shift())
    }

    pub fn is_normalized(&self) -> bool {
        self.row0() == 0 && self.i0.dx == 0
    }

    pub fn period(&self) -> i64 {
        period(self.src.l)
    }
}

impl fmt::Display for Bordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} V0={} V1={} i0=({},{}) i1=({},{}): {} -> {}",
            self.n, self.v0, self.v1, self.i0.dt, self.i0.dx, self.i1.dt, self.i1.dx, self.src, self.tgt
        )
    }
}
