//! Bounded instances exported as finite pseudo-categories.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::lattice::{period, Shift};
use crate::pseudocat::{tau, FiniteCategory, FiniteGroupoid, GroupoidFunctor, PseudoCat, Truncation};

use super::cells::{canonical_globular, TwoCell};
use super::compose::{glue, glue_cells, Glued};
use super::{BordObject, Bordism, Germ, LBordError, Rows};

/// Which bordisms to enumerate.
///
/// For every ordered pair of objects, collar pair, height and twist, the
/// incoming surface is placed at row 0 with no spatial offset and `N` ranges
/// over `[-e0, h+1+e1]` for `0 ≤ e0, e1 ≤ pad` (when it contains both collar
/// images). Units are added. Only height 0 is closed under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceConfig {
    pub objects: Vec<BordObject>,
    pub heights: Vec<i64>,
    pub pad: i64,
}

impl InstanceConfig {
    /// One object `[0,1]` with marked row 0 on the cylinder of circumference `l`.
    pub fn two_dimensional(l: u32) -> Self {
        let a = BordObject::slab(l, 0, 1, 0).expect("valid object");
        Self { objects: vec![a], heights: vec![0], pad: 1 }
    }

    /// Objects `[0,1]` marked at 0 and `[0,2]` marked at 1, one spatial point.
    pub fn one_dimensional() -> Self {
        let a = BordObject::slab(0, 0, 1, 0).expect("valid object");
        let b = BordObject::slab(0, 0, 2, 1).expect("valid object");
        Self { objects: vec![a, b], heights: vec![0], pad: 1 }
    }

    pub fn bordisms(&self) -> Vec<Bordism> {
        let mut out = BTreeSet::new();
        for &src in &self.objects {
            let p = period(src.circumference());
            for &tgt in &self.objects {
                for v0 in src.collars() {
                    for v1 in tgt.collars() {
                        for &h in &self.heights {
                            for tw in 0..p {
                                let i0 = Shift::new(-src.sigma(), 0);
                                let i1 = Shift::new(h - tgt.sigma(), tw);
                                for e0 in 0..=self.pad {
                                    for e1 in 0..=self.pad {
                                        let n = Rows::new(-e0, h + 1 + e1);
                                        if let Ok(b) = Bordism::new(src, tgt, n, v0, v1, i0, i1) {
                                            out.insert(b);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.insert(Bordism::unit(src));
        }
        out.into_iter().collect()
    }
}

/// Invariant of the truncation: endpoints, height and twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassKey {
    pub src: (i64, i64, i64),
    pub tgt: (i64, i64, i64),
    pub height: i64,
    pub twist: i64,
}

pub fn class_key(b: &Bordism) -> ClassKey {
    let obj = |o: BordObject| (o.rows().lo, o.rows().hi, o.sigma());
    ClassKey { src: obj(b.src()), tgt: obj(b.tgt()), height: b.height(), twist: b.twist() }
}

/// A bounded instance with its value-level data and the exported tables.
#[derive(Debug, Clone)]
pub struct LBordInstance {
    pub objects: Vec<BordObject>,
    pub germs: Vec<Germ>,
    pub bordisms: Vec<Bordism>,
    pub cells: Vec<TwoCell>,
    pub pseudo: PseudoCat,
}

impl LBordInstance {
    pub fn object_index(&self, o: &BordObject) -> Option<usize> {
        self.objects.iter().position(|x| x == o)
    }

    pub fn germ_index(&self, g: &Germ) -> Option<usize> {
        self.germs.iter().position(|x| x == g)
    }

    pub fn bordism_index(&self, b: &Bordism) -> Option<usize> {
        self.bordisms.binary_search(b).ok()
    }

    pub fn cell_index(&self, c: &TwoCell) -> Option<usize> {
        self.cells.binary_search(c).ok()
    }
}

fn lookup<T: std::hash::Hash + Eq + std::fmt::Display>(
    index: &HashMap<T, usize>,
    x: &T,
) -> Result<usize, LBordError> {
    index.get(x).copied().ok_or_else(|| LBordError::NotClosed(format!("{x} is not in the instance")))
}

fn structure(e: crate::pseudocat::PseudoCatError) -> LBordError {
    LBordError::NotClosed(e.to_string())
}

/// Enumerates the configured instance and builds every table of the pseudo-category.
pub fn export_instance(config: &InstanceConfig) -> Result<LBordInstance, LBordError> {
    let objects = config.objects.clone();
    let obj_index: HashMap<BordObject, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();

    let mut germs = Vec::new();
    for &src in &objects {
        for &tgt in &objects {
            for dx in 0..period(src.circumference()) {
                germs.push(Germ::from_dx(src, tgt, dx));
            }
        }
    }
    let germ_index: HashMap<Germ, usize> = germs.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let c0 = {
        let cat = FiniteCategory::from_fn(
            objects.len(),
            germs.iter().map(|g| obj_index[&g.src()]).collect(),
            germs.iter().map(|g| obj_index[&g.tgt()]).collect(),
            objects.iter().map(|&o| germ_index[&Germ::identity(o)]).collect(),
            |g, f| germ_index[&germs[g].vcompose(&germs[f]).expect("composable germs")],
        )
        .map_err(structure)?
        .with_labels(
            objects.iter().map(|o| o.to_string()).collect(),
            germs.iter().map(|g| g.to_string()).collect(),
        );
        let inverse = germs.iter().map(|g| germ_index[&g.inverse()]).collect();
        FiniteGroupoid::with_inverse(cat, inverse).map_err(structure)?
    };

    let bordisms = config.bordisms();
    let bord_index: HashMap<Bordism, usize> = bordisms.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut cells = Vec::new();
    for &b in &bordisms {
        for &bp in &bordisms {
            if b.height() != bp.height() {
                continue;
            }
            for dx in 0..b.period() {
                cells.push(TwoCell::new(b, bp, Shift::new(bp.row0() - b.row0(), dx))?);
            }
        }
    }
    cells.sort();
    let cell_index: HashMap<TwoCell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let c1 = {
        let cat = FiniteCategory::from_fn(
            bordisms.len(),
            cells.iter().map(|c| bord_index[&c.src()]).collect(),
            cells.iter().map(|c| bord_index[&c.tgt()]).collect(),
            bordisms.iter().map(|&b| cell_index[&TwoCell::identity(b)]).collect(),
            |g, f| cell_index[&cells[g].vcompose(&cells[f]).expect("composable cells")],
        )
        .map_err(structure)?
        .with_labels(
            bordisms.iter().map(|b| b.to_string()).collect(),
            cells.iter().map(|c| c.to_string()).collect(),
        );
        let inverse = cells.iter().map(|c| cell_index[&c.inverse()]).collect();
        FiniteGroupoid::with_inverse(cat, inverse).map_err(structure)?
    };

    let src = GroupoidFunctor {
        obj: bordisms.iter().map(|b| obj_index[&b.src()]).collect(),
        mor: cells.iter().map(|c| germ_index[&c.cell_source()]).collect(),
    };
    let tgt = GroupoidFunctor {
        obj: bordisms.iter().map(|b| obj_index[&b.tgt()]).collect(),
        mor: cells.iter().map(|c| germ_index[&c.cell_target()]).collect(),
    };
    let hunit = GroupoidFunctor {
        obj: objects.iter().map(|&o| lookup(&bord_index, &Bordism::unit(o))).collect::<Result<_, _>>()?,
        mor: germs.iter().map(|g| lookup(&cell_index, &TwoCell::unit(g))).collect::<Result<_, _>>()?,
    };

    // Pushouts of every composable pair, shared by the object and cell tables.
    let mut glued: HashMap<(usize, usize), Glued> = HashMap::new();
    let mut hcomp_obj = HashMap::new();
    for (i1, b1) in bordisms.iter().enumerate() {
        for (i0, b0) in bordisms.iter().enumerate() {
            if b0.tgt() != b1.src() {
                continue;
            }
            let g = glue(b1, b0, b0.v1().intersect(b1.v0()))?;
            hcomp_obj.insert((i1, i0), lookup(&bord_index, &g.raw.normalized())?);
            glued.insert((i1, i0), g);
        }
    }
    let mut by_tgt_germ: Vec<Vec<usize>> = vec![Vec::new(); germs.len()];
    for a in 0..cells.len() {
        by_tgt_germ[tgt.mor[a]].push(a);
    }
    let mut hcomp_mor = HashMap::new();
    for (a1, c1) in cells.iter().enumerate() {
        for &a0 in &by_tgt_germ[src.mor[a1]] {
            let c0 = &cells[a0];
            let g = &glued[&(bord_index[&c1.src()], bord_index[&c0.src()])];
            let gp = &glued[&(bord_index[&c1.tgt()], bord_index[&c0.tgt()])];
            let c = glue_cells(c1, c0, g, gp)?;
            hcomp_mor.insert((a1, a0), lookup(&cell_index, &c)?);
        }
    }

    let hc = |h1: usize, h0: usize| hcomp_obj[&(h1, h0)];
    let globular = |from: usize, to: usize| -> Result<usize, LBordError> {
        lookup(&cell_index, &canonical_globular(&bordisms[from], &bordisms[to])?)
    };
    let mut assoc = HashMap::new();
    for &(h1, h0) in hcomp_obj.keys() {
        for h2 in 0..bordisms.len() {
            if bordisms[h2].src() != bordisms[h1].tgt() {
                continue;
            }
            let left = hc(hc(h2, h1), h0);
            let right = hc(h2, hc(h1, h0));
            assoc.insert((h2, h1, h0), globular(left, right)?);
        }
    }
    let lunit = (0..bordisms.len())
        .map(|h| globular(hc(hunit.obj[obj_index[&bordisms[h].tgt()]], h), h))
        .collect::<Result<Vec<_>, _>>()?;
    let runit = (0..bordisms.len())
        .map(|h| globular(hc(h, hunit.obj[obj_index[&bordisms[h].src()]]), h))
        .collect::<Result<Vec<_>, _>>()?;

    let pseudo = PseudoCat { c0, c1, src, tgt, hcomp_obj, hcomp_mor, hunit, assoc, lunit, runit };
    Ok(LBordInstance { objects, germs, bordisms, cells, pseudo })
}

/// The homotopy category of an exported instance.
pub fn truncate(instance: &LBordInstance) -> Truncation {
    tau(&instance.pseudo).expect("exported instances are coherent")
}
