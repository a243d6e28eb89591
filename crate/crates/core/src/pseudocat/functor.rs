//! Pseudo-functors and vertical transformations between pseudo-categories.

use std::collections::HashMap;

use super::category::{FiniteCategory, GroupoidFunctor};
use super::construct::{Iota, Square};
use super::pseudo::{LawReport, PseudoCat};

/// `F = (F0, F1, F^⊙, F^u)` with
/// `comp[(h1,h0)] : F1(h1)⊙F1(h0) → F1(h1⊙h0)` and `unit[c] : u(F0 c) → F1(u c)`.
#[derive(Debug, Clone)]
pub struct PseudoFunctor {
    pub f0: GroupoidFunctor,
    pub f1: GroupoidFunctor,
    pub comp: HashMap<(usize, usize), usize>,
    pub unit: Vec<usize>,
}

impl PseudoFunctor {
    pub fn identity(p: &PseudoCat) -> Self {
        let comp = p
            .composable_horizontals()
            .into_iter()
            .map(|(h1, h0)| ((h1, h0), p.c1.identity(p.hcomp(h1, h0).expect("composable"))))
            .collect();
        let unit = (0..p.c0.n_objects()).map(|c| p.c1.identity(p.hunit.obj[c])).collect();
        Self {
            f0: GroupoidFunctor::identity(p.c0.category()),
            f1: GroupoidFunctor::identity(p.c1.category()),
            comp,
            unit,
        }
    }

    /// Identity tables on both layers.
    pub fn is_identity(&self, p: &PseudoCat) -> bool {
        self.f0 == GroupoidFunctor::identity(p.c0.category())
            && self.f1 == GroupoidFunctor::identity(p.c1.category())
    }
}

/// Checks span preservation, globular and natural coherence cells, and the
/// associativity and unit coherence diagrams.
pub fn check_pseudofunctor(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> LawReport {
    let mut r = LawReport::default();
    r.push("vertical_functor", f.f0.validate(&p.c0, &q.c0).err().map(|e| e.to_string()));
    r.push("cell_functor", f.f1.validate(&p.c1, &q.c1).err().map(|e| e.to_string()));
    if !r.all_pass() {
        return r;
    }
    r.push("span_preservation", span_preservation_witness(p, q, f));
    r.push("coherence_cells", coherence_cell_witness(p, q, f));
    if !r.all_pass() {
        return r;
    }
    r.push("coherence_naturality", functor_naturality_witness(p, q, f));
    r.push("associativity_coherence", functor_assoc_witness(p, q, f));
    r.push("unit_coherence", functor_unit_witness(p, q, f));
    r
}

fn span_preservation_witness(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> Option<String> {
    for h in 0..p.n_horizontal() {
        let fh = f.f1.obj[h];
        if q.hsrc(fh) != f.f0.obj[p.hsrc(h)] || q.htgt(fh) != f.f0.obj[p.htgt(h)] {
            return Some(format!("horizontal {h}"));
        }
    }
    for a in 0..p.c1.n_morphisms() {
        let fa = f.f1.mor[a];
        if q.src.mor[fa] != f.f0.mor[p.src.mor[a]] || q.tgt.mor[fa] != f.f0.mor[p.tgt.mor[a]] {
            return Some(format!("cell {a}"));
        }
    }
    None
}

fn coherence_cell_witness(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> Option<String> {
    for (h1, h0) in p.composable_horizontals() {
        let Some(&x) = f.comp.get(&(h1, h0)) else {
            return Some(format!("missing composition cell ({h1},{h0})"));
        };
        let from = q.hcomp(f.f1.obj[h1], f.f1.obj[h0]);
        let to = p.hcomp(h1, h0).map(|h| f.f1.obj[h]);
        if !q.is_globular(x) || Some(q.c1.src(x)) != from || Some(q.c1.tgt(x)) != to {
            return Some(format!("composition cell ({h1},{h0})"));
        }
    }
    if f.unit.len() != p.c0.n_objects() {
        return Some("unit cell table length".into());
    }
    for c in 0..p.c0.n_objects() {
        let x = f.unit[c];
        if !q.is_globular(x)
            || q.c1.src(x) != q.hunit.obj[f.f0.obj[c]]
            || q.c1.tgt(x) != f.f1.obj[p.hunit.obj[c]]
        {
            return Some(format!("unit cell at object {c}"));
        }
    }
    None
}

fn functor_naturality_witness(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> Option<String> {
    let mut pairs: Vec<_> = p.hcomp_mor.iter().collect();
    pairs.sort();
    for (&(a1, a0), &a) in pairs {
        let (h1, h0) = (p.c1.src(a1), p.c1.src(a0));
        let (k1, k0) = (p.c1.tgt(a1), p.c1.tgt(a0));
        let lhs = q.c1.comp(f.f1.mor[a], f.comp[&(h1, h0)]);
        let rhs = q
            .hcomp_cells(f.f1.mor[a1], f.f1.mor[a0])
            .map(|x| q.c1.comp(f.comp[&(k1, k0)], x));
        if Some(lhs) != rhs {
            return Some(format!("composition cell naturality at ({a1},{a0})"));
        }
    }
    for g in 0..p.c0.n_morphisms() {
        let (c, d) = (p.c0.src(g), p.c0.tgt(g));
        let lhs = q.c1.comp(f.f1.mor[p.hunit.mor[g]], f.unit[c]);
        let rhs = q.c1.comp(f.unit[d], q.hunit.mor[f.f0.mor[g]]);
        if lhs != rhs {
            return Some(format!("unit cell naturality at vertical {g}"));
        }
    }
    None
}

fn functor_assoc_witness(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> Option<String> {
    let ph = |a, b| p.hcomp(a, b).expect("composable");
    let qhc = |a, b| q.hcomp_cells(a, b).expect("composable cells");
    let qc = |a, b| q.c1.comp(a, b);
    let fo = |h: usize| f.f1.obj[h];
    for (h1, h0) in p.composable_horizontals() {
        for h2 in (0..p.n_horizontal()).filter(|&x| p.hsrc(x) == p.htgt(h1)) {
            let lhs = qc(
                f.f1.mor[p.assoc[&(h2, h1, h0)]],
                qc(f.comp[&(ph(h2, h1), h0)], qhc(f.comp[&(h2, h1)], q.c1.identity(fo(h0)))),
            );
            let rhs = qc(
                f.comp[&(h2, ph(h1, h0))],
                qc(qhc(q.c1.identity(fo(h2)), f.comp[&(h1, h0)]), q.assoc[&(fo(h2), fo(h1), fo(h0))]),
            );
            if lhs != rhs {
                return Some(format!("at ({h2},{h1},{h0})"));
            }
        }
    }
    None
}

fn functor_unit_witness(p: &PseudoCat, q: &PseudoCat, f: &PseudoFunctor) -> Option<String> {
    let qhc = |a, b| q.hcomp_cells(a, b).expect("composable cells");
    for h in 0..p.n_horizontal() {
        let (s, t) = (p.hsrc(h), p.htgt(h));
        let fh = f.f1.obj[h];
        let ut = p.hunit.obj[t];
        let left = q.c1.comp(
            f.f1.mor[p.lunit[h]],
            q.c1.comp(f.comp[&(ut, h)], qhc(f.unit[t], q.c1.identity(fh))),
        );
        if left != q.lunit[fh] {
            return Some(format!("left unit coherence at {h}"));
        }
        let us = p.hunit.obj[s];
        let right = q.c1.comp(
            f.f1.mor[p.runit[h]],
            q.c1.comp(f.comp[&(h, us)], qhc(q.c1.identity(fh), f.unit[s])),
        );
        if right != q.runit[fh] {
            return Some(format!("right unit coherence at {h}"));
        }
    }
    None
}

/// A vertical transformation `ζ : F ⇒ G` given by its two component families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    /// `zeta0[c] : F0 c → G0 c` in `q.c0`.
    pub zeta0: Vec<usize>,
    /// `zeta1[h] : F1 h → G1 h` in `q.c1`.
    pub zeta1: Vec<usize>,
}

/// Naturality of both families plus the source/target, composition and unit conditions.
pub fn check_transformation(
    p: &PseudoCat,
    q: &PseudoCat,
    f: &PseudoFunctor,
    g: &PseudoFunctor,
    z: &Transformation,
) -> LawReport {
    let mut r = LawReport::default();
    let mut w = None;
    for c in 0..p.c0.n_objects() {
        let x = z.zeta0[c];
        if q.c0.src(x) != f.f0.obj[c] || q.c0.tgt(x) != g.f0.obj[c] {
            w = Some(format!("vertical component at {c} has wrong ends"));
        }
    }
    for h in 0..p.n_horizontal() {
        let x = z.zeta1[h];
        if q.c1.src(x) != f.f1.obj[h] || q.c1.tgt(x) != g.f1.obj[h] {
            w = w.or(Some(format!("cell component at {h} has wrong ends")));
        }
    }
    r.push("component_shapes", w);
    if !r.all_pass() {
        return r;
    }
    let vertical_nat = (0..p.c0.n_morphisms()).find(|&v| {
        let (a, b) = (p.c0.src(v), p.c0.tgt(v));
        q.c0.comp(g.f0.mor[v], z.zeta0[a]) != q.c0.comp(z.zeta0[b], f.f0.mor[v])
    });
    r.push("vertical_naturality", vertical_nat.map(|v| format!("at vertical {v}")));
    let cell_nat = (0..p.c1.n_morphisms()).find(|&a| {
        let (h, k) = (p.c1.src(a), p.c1.tgt(a));
        q.c1.comp(g.f1.mor[a], z.zeta1[h]) != q.c1.comp(z.zeta1[k], f.f1.mor[a])
    });
    r.push("cell_naturality", cell_nat.map(|a| format!("at cell {a}")));
    let ends = (0..p.n_horizontal()).find(|&h| {
        q.src.mor[z.zeta1[h]] != z.zeta0[p.hsrc(h)] || q.tgt.mor[z.zeta1[h]] != z.zeta0[p.htgt(h)]
    });
    r.push("source_target_condition", ends.map(|h| format!("at horizontal {h}")));
    let comp = p.composable_horizontals().into_iter().find(|&(h1, h0)| {
        let h = p.hcomp(h1, h0).expect("composable");
        let lhs = q.c1.comp(z.zeta1[h], f.comp[&(h1, h0)]);
        let rhs = q
            .hcomp_cells(z.zeta1[h1], z.zeta1[h0])
            .map(|x| q.c1.comp(g.comp[&(h1, h0)], x));
        Some(lhs) != rhs
    });
    r.push("composition_condition", comp.map(|(a, b)| format!("at ({a},{b})")));
    let unit = (0..p.c0.n_objects()).find(|&c| {
        let lhs = q.c1.comp(z.zeta1[p.hunit.obj[c]], f.unit[c]);
        let rhs = q.c1.comp(g.unit[c], q.hunit.mor[z.zeta0[c]]);
        lhs != rhs
    });
    r.push("unit_condition", unit.map(|c| format!("at object {c}")));
    r
}

/// An ordinary functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor {
    pub fn as_tables(&self) -> GroupoidFunctor {
        GroupoidFunctor { obj: self.obj.clone(), mor: self.mor.clone() }
    }
}

/// `ι(F) : ι(c) → ι(d)` with identity coherence cells.
pub fn iota_functor(ic: &Iota, id: &Iota, d: &FiniteCategory, f: &Functor) -> PseudoFunctor {
    let d_core_index: HashMap<usize, usize> =
        id.core_embedding.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let sq_index: HashMap<Square, usize> =
        id.squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let vert = |g: usize| d_core_index[&f.mor[ic.core_embedding[g]]];
    let f0 = GroupoidFunctor {
        obj: f.obj.clone(),
        mor: (0..ic.core_embedding.len()).map(vert).collect(),
    };
    let f1 = GroupoidFunctor {
        obj: f.mor.clone(),
        mor: ic
            .squares
            .iter()
            .map(|s| {
                sq_index[&Square {
                    bottom: f.mor[s.bottom],
                    top: f.mor[s.top],
                    left: vert(s.left),
                    right: vert(s.right),
                }]
            })
            .collect(),
    };
    let q = &id.pseudo;
    let comp = ic
        .pseudo
        .composable_horizontals()
        .into_iter()
        .map(|(h1, h0)| ((h1, h0), q.c1.identity(d.comp(f.mor[h1], f.mor[h0]))))
        .collect();
    let unit = f.obj.iter().map(|&o| q.c1.identity(d.identity(o))).collect();
    PseudoFunctor { f0, f1, comp, unit }
}

/// `ι(θ)` for a natural isomorphism `θ : F ⇒ G`, components in `d`.
pub fn iota_transformation(
    ic: &Iota,
    id: &Iota,
    c: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    theta: &[usize],
) -> Option<Transformation> {
    let d_core_index: HashMap<usize, usize> =
        id.core_embedding.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let sq_index: HashMap<Square, usize> =
        id.squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let zeta0: Vec<usize> =
        theta.iter().map(|t| d_core_index.get(t).copied()).collect::<Option<_>>()?;
    let zeta1 = (0..ic.pseudo.n_horizontal())
        .map(|h| {
            sq_index
                .get(&Square {
                    bottom: f.mor[h],
                    top: g.mor[h],
                    left: zeta0[c.src(h)],
                    right: zeta0[c.tgt(h)],
                })
                .copied()
        })
        .collect::<Option<_>>()?;
    Some(Transformation { zeta0, zeta1 })
}
