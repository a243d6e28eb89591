//! Horizontal composition by pushout, and collar resizing.

use std::collections::HashMap;

use crate::lattice::{period, Shift, Site};
use crate::pseudocat::UnionFind;

use super::{Bordism, LBordError, Rows, TwoCell};

/// A pushout `N0⁻ ⊔_W N1⁺` realized in the frame of `N0`.
pub(super) struct Glued {
    /// The composite before normalization.
    pub(super) raw: Bordism,
    /// Embedding of `N1` coordinates into the glued frame.
    pub(super) s: Shift,
    /// Number of sites of the pushout.
    pub(super) classes: usize,
}

pub(super) fn glue(b1: &Bordism, b0: &Bordism, w: Rows) -> Result<Glued, LBordError> {
    if b0.tgt() != b1.src() {
        return Err(LBordError::ObjectMismatch);
    }
    let l = b0.circumference();
    let p = period(l);
    let shared = b0.v1().intersect(b1.v0());
    if !shared.contains_rows(w) || !w.contains_rows(b0.tgt().min_collar()) {
        return Err(LBordError::CollarTooSmall(format!(
            "gluing region {w} must lie in {shared} and contain {}",
            b0.tgt().min_collar()
        )));
    }
    let (i01, i10) = (b0.i1(), b1.i0());
    let n0m = b0.n().past_of(w.shifted(i01.dt));
    let n1p = b1.n().future_of(w.shifted(i10.dt));

    // Disjoint union of the two pieces, glued along the images of W.
    let n0 = (n0m.len() * p) as usize;
    let n1 = (n1p.len() * p) as usize;
    let idx0 = |s: Site| n0m.contains(s.t).then(|| ((s.t - n0m.lo) * p + s.x) as usize);
    let idx1 = |s: Site| n1p.contains(s.t).then(|| n0 + ((s.t - n1p.lo) * p + s.x) as usize);
    let site_of = |i: usize| {
        if i < n0 {
            (0, Site::new(n0m.lo + i as i64 / p, i as i64 % p))
        } else {
            let j = (i - n0) as i64;
            (1, Site::new(n1p.lo + j / p, j % p))
        }
    };
    let mut uf = UnionFind::new(n0 + n1);
    for t in w.lo..=w.hi {
        for x in 0..p {
            let site = Site::new(t, x);
            let a = idx0(i01.apply(site, l));
            let b = idx1(i10.apply(site, l));
            match (a, b) {
                (Some(a), Some(b)) => {
                    uf.union(a, b);
                }
                _ => {
                    return Err(LBordError::GluingOverlapInconsistent(format!(
                        "collar site {site} has no image in one of the pieces"
                    )))
                }
            }
        }
    }

    // Place piece 1 by s = i01 ∘ i10⁻¹ and check the quotient embeds.
    let s = i01.then(i10.inverse(l), l);
    let mut placed: HashMap<usize, Site> = HashMap::new();
    let mut owner: HashMap<Site, usize> = HashMap::new();
    for i in 0..n0 + n1 {
        let (piece, site) = site_of(i);
        let pos = if piece == 0 { site } else { s.apply(site, l) };
        let root = uf.find(i);
        match placed.get(&root) {
            Some(&q) if q != pos => {
                return Err(LBordError::GluingOverlapInconsistent(format!(
                    "identified sites land at {q} and {pos}"
                )))
            }
            Some(_) => {}
            None => {
                placed.insert(root, pos);
            }
        }
        if let Some(&other) = owner.get(&pos) {
            if other != root {
                return Err(LBordError::GluingOverlapInconsistent(format!(
                    "distinct sites collide at {pos}"
                )));
            }
        }
        owner.insert(pos, root);
    }
    let lo = owner.keys().map(|q| q.t).min().expect("nonempty pieces");
    let hi = owner.keys().map(|q| q.t).max().expect("nonempty pieces");
    if owner.len() as i64 != (hi - lo + 1) * p {
        return Err(LBordError::GluingOverlapInconsistent("glued region has a gap".into()));
    }
    let v0 = b0.v0().intersect(n0m.shifted(-b0.i0().dt));
    let v1 = b1.v1().intersect(n1p.shifted(-b1.i1().dt));
    let raw = Bordism::new(b0.src(), b1.tgt(), Rows::new(lo, hi), v0, v1, b0.i0(), s.then(b1.i1(), l))?;
    Ok(Glued { raw, s, classes: placed.len() })
}

/// `(N1, i10, i11) ⊙ (N0, i00, i01)`: glue `J⁻(i01 W)` and `J⁺(i10 W)` along
/// `W = V01 ∩ V10`, then normalize so that `i0(Σ0)` sits at row 0 with no offset.
pub fn hcompose(b1: &Bordism, b0: &Bordism) -> Result<Bordism, LBordError> {
    compose_along(b1, b0, b0.v1().intersect(b1.v0()))
}

/// The composite glued along a smaller collar `W ⊆ V01 ∩ V10`.
pub fn compose_along(b1: &Bordism, b0: &Bordism, w: Rows) -> Result<Bordism, LBordError> {
    Ok(glue(b1, b0, w)?.raw.normalized())
}

/// Number of sites in the pushout `N0⁻ ⊔_W N1⁺`.
pub fn glued_site_count(b1: &Bordism, b0: &Bordism) -> Result<usize, LBordError> {
    Ok(glue(b1, b0, b0.v1().intersect(b1.v0()))?.classes)
}

/// `[Z1, f1] ⊙ [Z0, f0]`, the translation glued from both halves.
pub fn hcompose_cells(c1: &TwoCell, c0: &TwoCell) -> Result<TwoCell, LBordError> {
    if c0.cell_target() != c1.cell_source() {
        return Err(LBordError::CellMismatch);
    }
    let (b0, b1, b0p, b1p) = (c0.src(), c1.src(), c0.tgt(), c1.tgt());
    let g = glue(&b1, &b0, b0.v1().intersect(b1.v0()))?;
    let gp = glue(&b1p, &b0p, b0p.v1().intersect(b1p.v0()))?;
    glue_cells(c1, c0, &g, &gp)
}

/// Cell composite from the two precomputed pushouts of its boundary bordisms.
pub(super) fn glue_cells(c1: &TwoCell, c0: &TwoCell, g: &Glued, gp: &Glued) -> Result<TwoCell, LBordError> {
    let l = c0.src().circumference();
    let f0 = c0.f();
    let f1_in_frame = gp.s.then(c1.f(), l).then(g.s.inverse(l), l);
    if f1_in_frame != f0 {
        return Err(LBordError::GluingOverlapInconsistent("cell halves disagree on the overlap".into()));
    }
    let (t, tp) = (g.raw.normalizing_shift(), gp.raw.normalizing_shift());
    let f = tp.then(f0, l).then(t.inverse(l), l);
    TwoCell::new(g.raw.normalized(), gp.raw.normalized(), f)
}

/// The example choice `Ṽ0 = V0 ∩ i0⁻¹ J⁻(i1 V1)`, `Ṽ1 = V1 ∩ i1⁻¹ J⁺(i0 V0)`.
pub fn default_small_collars(b: &Bordism) -> (Rows, Rows) {
    let img0 = b.v0().shifted(b.i0().dt);
    let img1 = b.v1().shifted(b.i1().dt);
    let v0 = b.v0().intersect(Rows::new(i64::MIN / 2, img1.hi - b.i0().dt));
    let v1 = b.v1().intersect(Rows::new(img0.lo - b.i1().dt, i64::MAX / 2));
    (v0, v1)
}

/// Shrinks collars and `N`, returning the smaller bordism and the globular
/// cell from it to `b`.
pub fn resize_collars(b: &Bordism, v0: Rows, v1: Rows, n: Rows) -> Result<(Bordism, TwoCell), LBordError> {
    let too_small = |msg: String| Err(LBordError::CollarTooSmall(msg));
    if !b.v0().contains_rows(v0) || !v0.contains_rows(b.src().min_collar()) {
        return too_small(format!("V0 {v0} must lie in {} and contain {}", b.v0(), b.src().min_collar()));
    }
    if !b.v1().contains_rows(v1) || !v1.contains_rows(b.tgt().min_collar()) {
        return too_small(format!("V1 {v1} must lie in {} and contain {}", b.v1(), b.tgt().min_collar()));
    }
    let img0 = v0.shifted(b.i0().dt);
    let img1 = v1.shifted(b.i1().dt);
    if img0.hi > img1.hi || img1.lo < img0.lo {
        return too_small(format!("collar images {img0} and {img1} are not causally ordered"));
    }
    let needed = Rows::new(img0.lo, img1.hi);
    if !n.contains_rows(needed) || !b.n().contains_rows(n) {
        return too_small(format!("N {n} must lie in {} and contain {needed}", b.n()));
    }
    let small = Bordism::new(b.src(), b.tgt(), n, v0, v1, b.i0(), b.i1())?;
    let cell = TwoCell::new(small, *b, Shift::IDENTITY)?;
    Ok((small, cell))
}
