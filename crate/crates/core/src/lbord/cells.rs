//! 2-cells, their boundary germs, units, and companions.

use std::fmt;

use crate::lattice::Shift;

use super::{BordObject, Bordism, Germ, LBordError, Rows};

/// A germ `[Z, f] : (N, i0, i1) ⇒ (N', i0', i1')` of a translation `f` defined
/// on `Z ⊇ J⁺(i0 Σ0) ∩ J⁻(i1 Σ1)` with `f i0(Σ0) = i0'(Σ0')` and
/// `f i1(Σ1) = i1'(Σ1')`. Canonical form: the translation itself, with
/// `Z` the core rows of the source bordism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCell {
    src: Bordism,
    tgt: Bordism,
    f: Shift,
}

impl TwoCell {
    pub fn new(src: Bordism, tgt: Bordism, f: Shift) -> Result<Self, LBordError> {
        if src.circumference() != tgt.circumference() {
            return Err(LBordError::InvalidCell("circumferences differ".into()));
        }
        if src.row0() + f.dt != tgt.row0() {
            return Err(LBordError::InvalidCell(format!(
                "f moves the incoming row {} to {}, not {}",
                src.row0(),
                src.row0() + f.dt,
                tgt.row0()
            )));
        }
        if src.row1() + f.dt != tgt.row1() {
            return Err(LBordError::InvalidCell(format!(
                "f moves the outgoing row {} to {}, not {}",
                src.row1(),
                src.row1() + f.dt,
                tgt.row1()
            )));
        }
        // The image of the core is the core of the target, which lies in N'.
        Ok(Self { src, tgt, f: f.normalized(src.circumference()) })
    }

    pub fn identity(b: Bordism) -> Self {
        Self { src: b, tgt: b, f: Shift::IDENTITY }
    }

    pub fn src(&self) -> Bordism {
        self.src
    }

    pub fn tgt(&self) -> Bordism {
        self.tgt
    }

    pub fn f(&self) -> Shift {
        self.f
    }

    /// Canonical domain `Z`.
    pub fn z(&self) -> Rows {
        self.src.core()
    }

    /// `[i0⁻¹ f⁻¹ i0'(V0'), i0'⁻¹ f i0]`.
    pub fn cell_source(&self) -> Germ {
        Germ::from_dx(self.src.src(), self.tgt.src(), self.f.dx + self.src.i0().dx - self.tgt.i0().dx)
    }

    /// `[i1⁻¹ f⁻¹ i1'(V1'), i1'⁻¹ f i1]`.
    pub fn cell_target(&self) -> Germ {
        Germ::from_dx(self.src.tgt(), self.tgt.tgt(), self.f.dx + self.src.i1().dx - self.tgt.i1().dx)
    }

    pub fn is_globular(&self) -> bool {
        self.cell_source().is_identity() && self.cell_target().is_identity()
    }

    /// `self ∘ first`.
    pub fn vcompose(&self, first: &TwoCell) -> Result<TwoCell, LBordError> {
        if first.tgt != self.src {
            return Err(LBordError::CellMismatch);
        }
        let l = self.src.circumference();
        TwoCell::new(first.src, self.tgt, self.f.then(first.f, l))
    }

    pub fn inverse(&self) -> TwoCell {
        let l = self.src.circumference();
        Self { src: self.tgt, tgt: self.src, f: self.f.inverse(l) }
    }

    /// `u([W, g]) = [W, g] : (M, id, id) ⇒ (M', id, id)`.
    pub fn unit(g: &Germ) -> TwoCell {
        TwoCell::new(Bordism::unit(g.src()), Bordism::unit(g.tgt()), g.shift()).expect("unit cell")
    }
}

impl fmt::Display for TwoCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Z={}, f=({},{})]", self.z(), self.f.dt, self.f.dx)
    }
}

/// The unique globular cell `b ⇒ b'`, when one exists.
///
/// Globularity fixes `f` on the incoming surface; it then exists iff both
/// bordisms have the same endpoints, height and twist.
pub fn canonical_globular(b: &Bordism, bp: &Bordism) -> Result<TwoCell, LBordError> {
    if b.src() != bp.src() || b.tgt() != bp.tgt() {
        return Err(LBordError::ObjectMismatch);
    }
    let f = Shift::new(bp.row0() - b.row0(), bp.i0().dx - b.i0().dx);
    let cell = TwoCell::new(*b, *bp, f)?;
    if !cell.is_globular() {
        return Err(LBordError::InvalidCell(format!(
            "twists {} and {} differ, no globular cell",
            b.twist(),
            bp.twist()
        )));
    }
    Ok(cell)
}

/// The companion `(M', g, id)` of a germ with its two cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompanionCells {
    pub horizontal: Bordism,
    /// `[M', id] : (M', g, id) ⇒ (M', id, id)` over `([W,g], id)`.
    pub up: TwoCell,
    /// `[W, g] : (M, id, id) ⇒ (M', g, id)` over `(id, [W,g])`.
    pub down: TwoCell,
}

/// Largest collar of `g.src()` carried into `g.tgt()` by `g`.
fn germ_collar(g: &Germ) -> Rows {
    let (m, mp) = (g.src().rows(), g.tgt().rows());
    m.intersect(mp.shifted(-g.shift().dt))
}

pub fn companion(g: &Germ) -> CompanionCells {
    let (o, op) = (g.src(), g.tgt());
    let horizontal = Bordism::new(o, op, op.rows(), germ_collar(g), op.rows(), g.shift(), Shift::IDENTITY)
        .expect("companion bordism");
    let up = TwoCell::new(horizontal, Bordism::unit(op), Shift::IDENTITY).expect("companion up-cell");
    let down = TwoCell::new(Bordism::unit(o), horizontal, g.shift()).expect("companion down-cell");
    CompanionCells { horizontal, up, down }
}

/// `(M', id, g) : (M', Σ') ⇸ (M, Σ)`, the horizontal weak inverse of the companion.
pub fn weak_inverse(g: &Germ) -> Bordism {
    let op: BordObject = g.tgt();
    Bordism::new(op, g.src(), op.rows(), op.rows(), germ_collar(g), Shift::IDENTITY, g.shift())
        .expect("weak inverse bordism")
}
