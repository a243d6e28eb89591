//! Pseudo-categories: spans of groupoids with weakly associative horizontal composition.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::category::{FiberProduct, FiniteCategory, FiniteGroupoid, GroupoidFunctor};
use super::{fiber_product, PseudoCatError};

/// Status of a single law in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawCheck {
    pub fn new(law: &str, witness: Option<String>) -> Self {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        Self { law: law.to_string(), status, witness }
    }
}

/// Ordered list of checked laws.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub entries: Vec<LawCheck>,
}

pub type CoherenceReport = LawReport;
pub type AdjunctionReport = LawReport;

impl LawReport {
    pub fn push(&mut self, law: &str, witness: Option<String>) {
        self.entries.push(LawCheck::new(law, witness));
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

/// A pseudo-category presented by finite tables.
///
/// Objects of `c1` are horizontal morphisms, morphisms of `c1` are 2-cells,
/// morphisms of `c0` are vertical morphisms. Conventions:
/// `assoc[h2,h1,h0] : (h2⊙h1)⊙h0 → h2⊙(h1⊙h0)`,
/// `lunit[h] : u(t h)⊙h → h`, `runit[h] : h⊙u(s h) → h`.
#[derive(Debug, Clone)]
pub struct PseudoCat {
    pub c0: FiniteGroupoid,
    pub c1: FiniteGroupoid,
    pub src: GroupoidFunctor,
    pub tgt: GroupoidFunctor,
    /// `(h1, h0) ↦ h1⊙h0` for `src h1 = tgt h0`.
    pub hcomp_obj: HashMap<(usize, usize), usize>,
    /// `(α1, α0) ↦ α1⊙α0` for `src α1 = tgt α0`.
    pub hcomp_mor: HashMap<(usize, usize), usize>,
    pub hunit: GroupoidFunctor,
    pub assoc: HashMap<(usize, usize, usize), usize>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

impl PseudoCat {
    pub fn n_horizontal(&self) -> usize {
        self.c1.n_objects()
    }

    pub fn hsrc(&self, h: usize) -> usize {
        self.src.obj[h]
    }

    pub fn htgt(&self, h: usize) -> usize {
        self.tgt.obj[h]
    }

    pub fn hcomp(&self, h1: usize, h0: usize) -> Option<usize> {
        self.hcomp_obj.get(&(h1, h0)).copied()
    }

    pub fn hcomp_cells(&self, a1: usize, a0: usize) -> Option<usize> {
        self.hcomp_mor.get(&(a1, a0)).copied()
    }

    /// 2-cells whose source and target verticals are identities.
    pub fn is_globular(&self, cell: usize) -> bool {
        self.c0.is_identity(self.src.mor[cell]) && self.c0.is_identity(self.tgt.mor[cell])
    }

    /// Horizontal-composable pairs `(h1, h0)`, the objects of the fiber product.
    pub fn composable_horizontals(&self) -> Vec<(usize, usize)> {
        let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); self.c0.n_objects()];
        for h in 0..self.n_horizontal() {
            by_target[self.htgt(h)].push(h);
        }
        let mut out = Vec::new();
        for h1 in 0..self.n_horizontal() {
            for &h0 in &by_target[self.hsrc(h1)] {
                out.push((h1, h0));
            }
        }
        out
    }

    /// Cells grouped by their source vertical, and by their target vertical.
    fn cells_by_vertical(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.c0.n_morphisms();
        let mut by_src = vec![Vec::new(); n];
        let mut by_tgt = vec![Vec::new(); n];
        for a in 0..self.c1.n_morphisms() {
            by_src[self.src.mor[a]].push(a);
            by_tgt[self.tgt.mor[a]].push(a);
        }
        (by_src, by_tgt)
    }

    /// The strict fiber product `C1 ×_{C0} C1` over `src` and `tgt`, materialized.
    pub fn fiber_product(&self) -> Result<FiberProduct, PseudoCatError> {
        fiber_product(&self.c1, &self.c1, &self.c0, &self.src, &self.tgt)
    }

    fn unit_of(&self, c: usize) -> usize {
        self.hunit.obj[c]
    }

    fn id_cell(&self, h: usize) -> usize {
        self.c1.identity(h)
    }
}

/// Runs every law exhaustively; failures are entries, never errors.
pub fn check_coherence(p: &PseudoCat) -> CoherenceReport {
    let mut report = LawReport::default();
    report.push("source_functor", p.src.validate(&p.c1, &p.c0).err().map(|e| e.to_string()));
    report.push("target_functor", p.tgt.validate(&p.c1, &p.c0).err().map(|e| e.to_string()));
    report.push("unit_functor", p.hunit.validate(&p.c0, &p.c1).err().map(|e| e.to_string()));
    if report.failures().next().is_some() {
        return report;
    }
    report.push("span_equations", span_witness(p));
    if report.failures().next().is_some() {
        return report;
    }
    report.push("interchange", interchange_witness(p));
    report.push("globularity", globularity_witness(p));
    if report.get("globularity").is_some_and(|e| e.status == Status::Fail) {
        return report;
    }
    report.push("coherence_naturality", naturality_witness(p));
    report.push("pentagon", pentagon_witness(p));
    report.push("unity_triangle", triangle_witness(p));
    report.push("unit_unitors", unit_unitor_witness(p));
    report
}

fn span_witness(p: &PseudoCat) -> Option<String> {
    for (h1, h0) in p.composable_horizontals() {
        let Some(h) = p.hcomp(h1, h0) else {
            return Some(format!("missing composite of horizontals ({h1},{h0})"));
        };
        if p.hsrc(h) != p.hsrc(h0) || p.htgt(h) != p.htgt(h1) {
            return Some(format!("composite of horizontals ({h1},{h0}) has wrong ends"));
        }
    }
    for c in 0..p.c0.n_objects() {
        let u = p.unit_of(c);
        if p.hsrc(u) != c || p.htgt(u) != c {
            return Some(format!("unit of object {c} has wrong ends"));
        }
    }
    for g in 0..p.c0.n_morphisms() {
        let ug = p.hunit.mor[g];
        if p.src.mor[ug] != g || p.tgt.mor[ug] != g {
            return Some(format!("unit cell of vertical {g} has wrong verticals"));
        }
    }
    let (_, by_tgt) = p.cells_by_vertical();
    for a1 in 0..p.c1.n_morphisms() {
        for &a0 in &by_tgt[p.src.mor[a1]] {
            let Some(a) = p.hcomp_cells(a1, a0) else {
                return Some(format!("missing composite of cells ({a1},{a0})"));
            };
            if p.src.mor[a] != p.src.mor[a0] || p.tgt.mor[a] != p.tgt.mor[a1] {
                return Some(format!("composite of cells ({a1},{a0}) has wrong verticals"));
            }
            let expect_src = p.hcomp(p.c1.src(a1), p.c1.src(a0));
            let expect_tgt = p.hcomp(p.c1.tgt(a1), p.c1.tgt(a0));
            if Some(p.c1.src(a)) != expect_src || Some(p.c1.tgt(a)) != expect_tgt {
                return Some(format!("composite of cells ({a1},{a0}) has wrong horizontals"));
            }
        }
    }
    None
}

/// Functoriality of `⊙` on the fiber product: identities and vertical composites.
fn interchange_witness(p: &PseudoCat) -> Option<String> {
    for (h1, h0) in p.composable_horizontals() {
        let lhs = p.hcomp_cells(p.id_cell(h1), p.id_cell(h0));
        if lhs != p.hcomp(h1, h0).map(|h| p.id_cell(h)) {
            return Some(format!("identity cells of ({h1},{h0})"));
        }
    }
    // Composable grids: (β1,β0) after (α1,α0), where β_i starts at the target of α_i.
    let n = p.c1.n_morphisms();
    let mut from_horizontal: Vec<Vec<usize>> = vec![Vec::new(); p.n_horizontal()];
    for a in 0..n {
        from_horizontal[p.c1.src(a)].push(a);
    }
    for (&(a1, a0), &a) in sorted(&p.hcomp_mor) {
        let (t1, t0) = (p.c1.tgt(a1), p.c1.tgt(a0));
        for &b1 in &from_horizontal[t1] {
            for &b0 in &from_horizontal[t0] {
                if p.src.mor[b1] != p.tgt.mor[b0] {
                    continue;
                }
                let Some(b) = p.hcomp_cells(b1, b0) else {
                    return Some(format!("missing composite of cells ({b1},{b0})"));
                };
                let lhs = p.hcomp_cells(p.c1.comp(b1, a1), p.c1.comp(b0, a0));
                if lhs != Some(p.c1.comp(b, a)) {
                    return Some(format!("grid (({b1},{b0}),({a1},{a0}))"));
                }
            }
        }
    }
    None
}

fn sorted<K: Ord + Copy, V>(m: &HashMap<K, V>) -> Vec<(&K, &V)> {
    let mut v: Vec<_> = m.iter().collect();
    v.sort_by_key(|(k, _)| **k);
    v
}

fn globularity_witness(p: &PseudoCat) -> Option<String> {
    // Composites exist: the span check ran first.
    let h = |a: usize, b: usize| p.hcomp(a, b).expect("composable");
    for (h1, h0) in p.composable_horizontals() {
        let h10 = h(h1, h0);
        for h2 in (0..p.n_horizontal()).filter(|&h2| p.hsrc(h2) == p.htgt(h1)) {
            let Some(&a) = p.assoc.get(&(h2, h1, h0)) else {
                return Some(format!("associator ({h2},{h1},{h0}) missing"));
            };
            let from = Some(h(h(h2, h1), h0));
            let to = p.hcomp(h2, h10);
            if !p.is_globular(a) || Some(p.c1.src(a)) != from || Some(p.c1.tgt(a)) != to {
                return Some(format!("associator ({h2},{h1},{h0})"));
            }
        }
    }
    if p.lunit.len() != p.n_horizontal() || p.runit.len() != p.n_horizontal() {
        return Some("unitor tables have the wrong length".into());
    }
    for h in 0..p.n_horizontal() {
        let l = p.lunit[h];
        if !p.is_globular(l)
            || Some(p.c1.src(l)) != p.hcomp(p.unit_of(p.htgt(h)), h)
            || p.c1.tgt(l) != h
        {
            return Some(format!("left unitor at {h}"));
        }
        let r = p.runit[h];
        if !p.is_globular(r)
            || Some(p.c1.src(r)) != p.hcomp(h, p.unit_of(p.hsrc(h)))
            || p.c1.tgt(r) != h
        {
            return Some(format!("right unitor at {h}"));
        }
    }
    None
}

/// Naturality of the associator and unitors in their cell arguments.
fn naturality_witness(p: &PseudoCat) -> Option<String> {
    let hc = |a: usize, b: usize| p.hcomp_cells(a, b);
    let hcx = |a: usize, b: usize| p.hcomp_cells(a, b).expect("composable cells");
    let (by_src, by_tgt) = p.cells_by_vertical();
    for a in 0..p.c1.n_morphisms() {
        let (h, h2) = (p.c1.src(a), p.c1.tgt(a));
        let ut = p.hunit.mor[p.tgt.mor[a]];
        let lhs = hc(ut, a).map(|x| p.c1.comp(p.lunit[h2], x));
        if lhs != Some(p.c1.comp(a, p.lunit[h])) {
            return Some(format!("left unitor naturality at cell {a}"));
        }
        let us = p.hunit.mor[p.src.mor[a]];
        let lhs = hc(a, us).map(|x| p.c1.comp(p.runit[h2], x));
        if lhs != Some(p.c1.comp(a, p.runit[h])) {
            return Some(format!("right unitor naturality at cell {a}"));
        }
    }
    for a1 in 0..p.c1.n_morphisms() {
        for &a0 in &by_tgt[p.src.mor[a1]] {
            for &a2 in &by_src[p.tgt.mor[a1]] {
                let (h2, h1, h0) = (p.c1.src(a2), p.c1.src(a1), p.c1.src(a0));
                let (k2, k1, k0) = (p.c1.tgt(a2), p.c1.tgt(a1), p.c1.tgt(a0));
                let left = p.c1.comp(p.assoc[&(k2, k1, k0)], hcx(hcx(a2, a1), a0));
                let right = p.c1.comp(hcx(a2, hcx(a1, a0)), p.assoc[&(h2, h1, h0)]);
                if left != right {
                    return Some(format!("associator naturality at cells ({a2},{a1},{a0})"));
                }
            }
        }
    }
    None
}

fn pentagon_witness(p: &PseudoCat) -> Option<String> {
    let h = |a: usize, b: usize| p.hcomp(a, b).expect("composable");
    let hc = |a: usize, b: usize| p.hcomp_cells(a, b).expect("composable cells");
    let a = |x: usize, y: usize, z: usize| p.assoc[&(x, y, z)];
    let c = |g: usize, f: usize| p.c1.comp(g, f);
    for (h1, h0) in p.composable_horizontals() {
        for h2 in (0..p.n_horizontal()).filter(|&x| p.hsrc(x) == p.htgt(h1)) {
            for h3 in (0..p.n_horizontal()).filter(|&x| p.hsrc(x) == p.htgt(h2)) {
                let lhs = c(a(h3, h2, h(h1, h0)), a(h(h3, h2), h1, h0));
                let mid = c(a(h3, h(h2, h1), h0), hc(a(h3, h2, h1), p.id_cell(h0)));
                let rhs = c(hc(p.id_cell(h3), a(h2, h1, h0)), mid);
                if lhs != rhs {
                    return Some(format!("pentagon at ({h3},{h2},{h1},{h0})"));
                }
            }
        }
    }
    None
}

/// `(id ⊙ l_{h0}) ∘ a_{h1,u,h0} = r_{h1} ⊙ id`.
fn triangle_witness(p: &PseudoCat) -> Option<String> {
    for (h1, h0) in p.composable_horizontals() {
        let u = p.unit_of(p.htgt(h0));
        let lhs = p
            .hcomp_cells(p.id_cell(h1), p.lunit[h0])
            .map(|x| p.c1.comp(x, p.assoc[&(h1, u, h0)]));
        let rhs = p.hcomp_cells(p.runit[h1], p.id_cell(h0));
        if lhs.is_none() || lhs != rhs {
            return Some(format!("unity triangle at ({h1},{h0})"));
        }
    }
    None
}

fn unit_unitor_witness(p: &PseudoCat) -> Option<String> {
    (0..p.c0.n_objects())
        .find(|&c| p.lunit[p.unit_of(c)] != p.runit[p.unit_of(c)])
        .map(|c| format!("l and r differ on the unit of object {c}"))
}

/// Checks a bare category table against the category axioms (used on `tau` output).
pub fn category_law_witness(c: &FiniteCategory) -> Option<String> {
    for f in 0..c.n_morphisms() {
        if c.compose(c.identity(c.tgt(f)), f) != Some(f) || c.compose(f, c.identity(c.src(f))) != Some(f) {
            return Some(format!("unit law at {f}"));
        }
        for g in c.out_of(c.tgt(f)) {
            for h in c.out_of(c.tgt(g)) {
                if c.compose(h, c.comp(g, f)) != c.compose(c.comp(h, g), f) {
                    return Some(format!("associativity at ({h},{g},{f})"));
                }
            }
        }
    }
    None
}
