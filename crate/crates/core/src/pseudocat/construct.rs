//! The constructions `iota` and `tau`, and companion search.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::category::{FiniteCategory, FiniteGroupoid, GroupoidFunctor};
use super::pseudo::PseudoCat;
use super::PseudoCatError;

/// A commutative square `g1∘f = f'∘g0` with invertible verticals `g0`, `g1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Square {
    pub bottom: usize,
    pub top: usize,
    pub left: usize,
    pub right: usize,
}

/// `ι(c)` with its squares indexed by the morphism ids of `ι(c)₁`.
#[derive(Debug, Clone)]
pub struct Iota {
    pub pseudo: PseudoCat,
    pub squares: Vec<Square>,
    /// Embedding of `ι(c)₀` morphisms into the morphisms of `c`.
    pub core_embedding: Vec<usize>,
}

/// `ι(c)`: the core as verticals, all morphisms as horizontals, commuting squares
/// with invertible sides as 2-cells, identity coherence cells.
pub fn iota(c: &FiniteCategory) -> Iota {
    let (core, embed) = c.core();
    let n_mor = c.n_morphisms();
    let mut squares = Vec::new();
    for f in 0..n_mor {
        for fp in 0..n_mor {
            for (g0i, &g0) in embed.iter().enumerate() {
                if core.src(g0i) != c.src(f) || core.tgt(g0i) != c.src(fp) {
                    continue;
                }
                for (g1i, &g1) in embed.iter().enumerate() {
                    if core.src(g1i) != c.tgt(f) || core.tgt(g1i) != c.tgt(fp) {
                        continue;
                    }
                    if c.comp(g1, f) == c.comp(fp, g0) {
                        squares.push(Square { bottom: f, top: fp, left: g0i, right: g1i });
                    }
                }
            }
        }
    }
    let index: HashMap<Square, usize> = squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let sq = |bottom, top, left, right| index[&Square { bottom, top, left, right }];
    let identity: Vec<usize> = (0..n_mor)
        .map(|f| sq(f, f, core.identity(c.src(f)), core.identity(c.tgt(f))))
        .collect();
    let c1_cat = FiniteCategory::from_fn(
        n_mor,
        squares.iter().map(|s| s.bottom).collect(),
        squares.iter().map(|s| s.top).collect(),
        identity,
        |b, a| {
            let (sa, sb) = (squares[a], squares[b]);
            sq(sa.bottom, sb.top, core.comp(sb.left, sa.left), core.comp(sb.right, sa.right))
        },
    )
    .expect("squares form a category")
    .with_labels(
        (0..n_mor).map(|f| c.morphism_label(f).to_string()).collect(),
        squares
            .iter()
            .map(|s| {
                let (l, r) = (core.morphism_label(s.left), core.morphism_label(s.right));
                format!("{}=>{}|{l},{r}", c.morphism_label(s.bottom), c.morphism_label(s.top))
            })
            .collect(),
    );
    let inverse = squares
        .iter()
        .map(|s| sq(s.top, s.bottom, core.inverse(s.left), core.inverse(s.right)))
        .collect();
    let c1 = FiniteGroupoid::with_inverse(c1_cat, inverse).expect("squares with iso sides are invertible");
    let src = GroupoidFunctor {
        obj: (0..n_mor).map(|f| c.src(f)).collect(),
        mor: squares.iter().map(|s| s.left).collect(),
    };
    let tgt = GroupoidFunctor {
        obj: (0..n_mor).map(|f| c.tgt(f)).collect(),
        mor: squares.iter().map(|s| s.right).collect(),
    };
    let mut hcomp_obj = HashMap::new();
    for f in 0..n_mor {
        for g in c.out_of(c.tgt(f)) {
            hcomp_obj.insert((g, f), c.comp(g, f));
        }
    }
    let mut hcomp_mor = HashMap::new();
    for (a0, s0) in squares.iter().enumerate() {
        for (a1, s1) in squares.iter().enumerate() {
            if s1.left == s0.right {
                let s = sq(c.comp(s1.bottom, s0.bottom), c.comp(s1.top, s0.top), s0.left, s1.right);
                hcomp_mor.insert((a1, a0), s);
            }
        }
    }
    let hunit = GroupoidFunctor {
        obj: (0..c.n_objects()).map(|o| c.identity(o)).collect(),
        mor: (0..core.n_morphisms())
            .map(|g| sq(c.identity(core.src(g)), c.identity(core.tgt(g)), g, g))
            .collect(),
    };
    let mut assoc = HashMap::new();
    for &(h1, h0) in hcomp_obj.keys() {
        for h2 in c.out_of(c.tgt(h1)) {
            let whole = c.comp(c.comp(h2, h1), h0);
            assoc.insert((h2, h1, h0), identity_square(&index, &core, c, whole));
        }
    }
    let lunit = (0..n_mor).map(|f| identity_square(&index, &core, c, f)).collect::<Vec<_>>();
    let runit = lunit.clone();
    let pseudo = PseudoCat {
        c0: core,
        c1,
        src,
        tgt,
        hcomp_obj,
        hcomp_mor,
        hunit,
        assoc,
        lunit,
        runit,
    };
    Iota { pseudo, squares, core_embedding: embed }
}

fn identity_square(
    index: &HashMap<Square, usize>,
    core: &FiniteGroupoid,
    c: &FiniteCategory,
    f: usize,
) -> usize {
    index[&Square {
        bottom: f,
        top: f,
        left: core.identity(c.src(f)),
        right: core.identity(c.tgt(f)),
    }]
}

/// `τ(p)` with the horizontal-to-class assignment.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub category: FiniteCategory,
    /// Class (morphism id of `category`) of every horizontal.
    pub class_of: Vec<usize>,
    /// Least horizontal id in each class.
    pub representative: Vec<usize>,
}

/// Homotopy category: horizontals modulo globular 2-cells.
///
/// Classes come from union-find over globular cells, closed under `⊙` until
/// stable; each class is represented by its least horizontal id and classes
/// are numbered by representative.
pub fn tau(p: &PseudoCat) -> Result<Truncation, PseudoCatError> {
    let n = p.n_horizontal();
    let mut uf = UnionFind::new(n);
    for a in 0..p.c1.n_morphisms() {
        if p.is_globular(a) {
            uf.union(p.c1.src(a), p.c1.tgt(a));
        }
    }
    let pairs = p.composable_horizontals();
    loop {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut merged = false;
        for &(h1, h0) in &pairs {
            let key = (uf.find(h1), uf.find(h0));
            let h = p.hcomp(h1, h0).ok_or_else(|| {
                PseudoCatError::Structure(format!("missing composite ({h1},{h0})"))
            })?;
            match seen.get(&key) {
                Some(&other) => merged |= uf.union(other, h),
                None => {
                    seen.insert(key, h);
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut rep_to_class = BTreeMap::new();
    for h in 0..n {
        let r = uf.find(h);
        rep_to_class.entry(r).or_insert(h);
    }
    // Least member of each class, in ascending order.
    let mut representative: Vec<usize> = rep_to_class.values().copied().collect();
    representative.sort_unstable();
    let class_index: HashMap<usize, usize> =
        representative.iter().enumerate().map(|(i, &h)| (uf.find(h), i)).collect();
    let class_of: Vec<usize> = (0..n).map(|h| class_index[&uf.find(h)]).collect();
    let src = representative.iter().map(|&h| p.hsrc(h)).collect();
    let tgt = representative.iter().map(|&h| p.htgt(h)).collect();
    let identity = (0..p.c0.n_objects()).map(|c| class_of[p.hunit.obj[c]]).collect();
    let category = FiniteCategory::from_fn(p.c0.n_objects(), src, tgt, identity, |g, f| {
        class_of[p.hcomp(representative[g], representative[f]).expect("composable")]
    })
    .map_err(|e| PseudoCatError::NotWellDefined(e.to_string()))?
    .with_labels(
        (0..p.c0.n_objects()).map(|c| p.c0.object_label(c).to_string()).collect(),
        representative.iter().map(|&h| format!("[{}]", p.c1.object_label(h))).collect(),
    );
    Ok(Truncation { category, class_of, representative })
}

/// A companion `ĝ` of a vertical `g : c0 → c1` with its two cells:
/// `up : ĝ ⇒ u(c1)` over `(g, id)` and `down : u(c0) ⇒ ĝ` over `(id, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Companion {
    pub vertical: usize,
    pub horizontal: usize,
    pub cell_up: usize,
    pub cell_down: usize,
}

/// Both companion identities:
/// `up ∘ down = u(g)` and `l_ĝ ∘ (up ⊙ down) ∘ r_ĝ⁻¹ = id_ĝ`.
pub fn companion_identities_hold(p: &PseudoCat, c: &Companion) -> bool {
    let g = c.vertical;
    let (a, b) = (p.c0.src(g), p.c0.tgt(g));
    let h = c.horizontal;
    let shape_ok = p.hsrc(h) == a
        && p.htgt(h) == b
        && p.c1.src(c.cell_up) == h
        && p.c1.tgt(c.cell_up) == p.hunit.obj[b]
        && p.src.mor[c.cell_up] == g
        && p.tgt.mor[c.cell_up] == p.c0.identity(b)
        && p.c1.src(c.cell_down) == p.hunit.obj[a]
        && p.c1.tgt(c.cell_down) == h
        && p.src.mor[c.cell_down] == p.c0.identity(a)
        && p.tgt.mor[c.cell_down] == g;
    if !shape_ok {
        return false;
    }
    if p.c1.compose(c.cell_up, c.cell_down) != Some(p.hunit.mor[g]) {
        return false;
    }
    let Some(middle) = p.hcomp_cells(c.cell_up, c.cell_down) else { return false };
    let r_inv = p.c1.inverse(p.runit[h]);
    let whole = p.c1.compose(middle, r_inv).and_then(|x| p.c1.compose(p.lunit[h], x));
    whole == Some(p.c1.identity(h))
}

/// Exhaustive companion search: horizontals in id order, then (up, down) pairs
/// lexicographically; the first pair satisfying both identities wins.
pub fn find_companion(p: &PseudoCat, g: usize) -> Result<Companion, PseudoCatError> {
    let (a, b) = (p.c0.src(g), p.c0.tgt(g));
    let (ua, ub) = (p.hunit.obj[a], p.hunit.obj[b]);
    for h in (0..p.n_horizontal()).filter(|&h| p.hsrc(h) == a && p.htgt(h) == b) {
        let ups: Vec<usize> = p
            .c1
            .hom(h, ub)
            .into_iter()
            .filter(|&x| p.src.mor[x] == g && p.tgt.mor[x] == p.c0.identity(b))
            .collect();
        let downs: Vec<usize> = p
            .c1
            .hom(ua, h)
            .into_iter()
            .filter(|&x| p.src.mor[x] == p.c0.identity(a) && p.tgt.mor[x] == g)
            .collect();
        for &up in &ups {
            for &down in &downs {
                let c = Companion { vertical: g, horizontal: h, cell_up: up, cell_down: down };
                if companion_identities_hold(p, &c) {
                    return Ok(c);
                }
            }
        }
    }
    Err(PseudoCatError::NoCompanion(g))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges, keeping the smaller root; returns whether anything changed.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
