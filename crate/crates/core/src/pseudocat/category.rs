//! Finite categories, groupoids and functors presented by tables.

use std::collections::BTreeMap;

use super::PseudoCatError;

const NONE: u32 = u32::MAX;

/// A finite category with objects `0..n_objects` and morphisms `0..n_morphisms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    /// `comp[g * n + f] = g∘f` when `tgt f = src g`.
    comp: Vec<u32>,
    outgoing: Vec<Vec<usize>>,
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
}

impl FiniteCategory {
    /// Validates the tables: composition is defined exactly on composable pairs,
    /// lands in the right hom-set, and is associative and unital.
    pub fn new(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        compose: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self, PseudoCatError> {
        let n = src.len();
        let bad = |msg: String| Err(PseudoCatError::Structure(msg));
        if tgt.len() != n || identity.len() != n_objects {
            return bad("table lengths disagree".into());
        }
        if let Some(f) = (0..n).find(|&f| src[f] >= n_objects || tgt[f] >= n_objects) {
            return bad(format!("morphism {f} has an out-of-range endpoint"));
        }
        for (c, &i) in identity.iter().enumerate() {
            if i >= n || src[i] != c || tgt[i] != c {
                return bad(format!("identity of object {c} is not an endomorphism of it"));
            }
        }
        let mut comp = vec![NONE; n * n];
        for ((g, f), gf) in compose {
            if g >= n || f >= n || gf >= n {
                return bad(format!("composite ({g},{f}) -> {gf} out of range"));
            }
            if tgt[f] != src[g] {
                return bad(format!("composite ({g},{f}) given for a non-composable pair"));
            }
            if src[gf] != src[f] || tgt[gf] != tgt[g] {
                return bad(format!("composite ({g},{f}) -> {gf} has wrong endpoints"));
            }
            comp[g * n + f] = gf as u32;
        }
        let mut outgoing = vec![Vec::new(); n_objects];
        for (f, &a) in src.iter().enumerate() {
            outgoing[a].push(f);
        }
        let cat = Self {
            n_objects,
            outgoing,
            src,
            tgt,
            identity,
            comp,
            object_labels: (0..n_objects).map(|i| format!("o{i}")).collect(),
            morphism_labels: (0..n).map(|i| format!("m{i}")).collect(),
        };
        cat.check_laws()?;
        Ok(cat)
    }

    /// Builds from a total composition function on composable pairs.
    pub fn from_fn(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, PseudoCatError> {
        let n = src.len();
        let pairs: Vec<((usize, usize), usize)> = (0..n)
            .flat_map(|g| (0..n).map(move |f| (g, f)))
            .filter(|&(g, f)| tgt[f] == src[g])
            .map(|(g, f)| ((g, f), compose(g, f)))
            .collect();
        Self::new(n_objects, src, tgt, identity, pairs)
    }

    pub fn with_labels(mut self, objects: Vec<String>, morphisms: Vec<String>) -> Self {
        assert_eq!(objects.len(), self.n_objects);
        assert_eq!(morphisms.len(), self.n_morphisms());
        self.object_labels = objects;
        self.morphism_labels = morphisms;
        self
    }

    fn check_laws(&self) -> Result<(), PseudoCatError> {
        let n = self.n_morphisms();
        for f in 0..n {
            for g in self.out_of(self.tgt[f]) {
                if self.comp[g * n + f] == NONE {
                    return Err(PseudoCatError::Structure(format!("composite ({g},{f}) missing")));
                }
            }
            if self.compose(self.identity[self.tgt[f]], f) != Some(f)
                || self.compose(f, self.identity[self.src[f]]) != Some(f)
            {
                return Err(PseudoCatError::Structure(format!("identity law fails at {f}")));
            }
        }
        for f in 0..n {
            for g in self.out_of(self.tgt[f]) {
                let gf = self.comp[g * n + f] as usize;
                for h in self.out_of(self.tgt[g]) {
                    let hg = self.comp[h * n + g] as usize;
                    if self.comp[h * n + gf] != self.comp[hg * n + f] {
                        return Err(PseudoCatError::Structure(format!(
                            "associativity fails at ({h},{g},{f})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    pub fn object_label(&self, c: usize) -> &str {
        &self.object_labels[c]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphism_labels[f]
    }

    /// `g∘f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.comp[g * self.n_morphisms() + f];
        (v != NONE).then_some(v as usize)
    }

    /// `g∘f`; panics if not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.out_of(a).filter(|&f| self.tgt[f] == b).collect()
    }

    /// Morphisms with source `a`, ascending.
    pub fn out_of(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[a].iter().copied()
    }

    /// Two-sided inverse found by exhaustive search.
    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        self.hom(self.tgt[f], self.src[f]).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity[self.src[f]])
                && self.compose(f, g) == Some(self.identity[self.tgt[f]])
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse_of(f).is_some()
    }

    /// Maximal subgroupoid, with the embedding of its morphisms into `self`.
    pub fn core(&self) -> (FiniteGroupoid, Vec<usize>) {
        let isos: Vec<usize> = (0..self.n_morphisms()).filter(|&f| self.is_iso(f)).collect();
        let index: BTreeMap<usize, usize> = isos.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let src = isos.iter().map(|&f| self.src[f]).collect();
        let tgt = isos.iter().map(|&f| self.tgt[f]).collect();
        let identity = self.identity.iter().map(|i| index[i]).collect();
        let cat = FiniteCategory::from_fn(self.n_objects, src, tgt, identity, |g, f| {
            index[&self.comp(isos[g], isos[f])]
        })
        .expect("core of a valid category is valid")
        .with_labels(
            self.object_labels.clone(),
            isos.iter().map(|&f| self.morphism_labels[f].clone()).collect(),
        );
        let groupoid = FiniteGroupoid::new(cat).expect("isomorphisms form a groupoid");
        (groupoid, isos)
    }

    /// Same objects, morphisms, endpoints and composition table.
    pub fn same_tables(&self, other: &Self) -> bool {
        self.n_objects == other.n_objects
            && self.src == other.src
            && self.tgt == other.tgt
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

/// A finite category in which every morphism is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    cat: FiniteCategory,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn new(cat: FiniteCategory) -> Result<Self, PseudoCatError> {
        let inverse = (0..cat.n_morphisms())
            .map(|f| {
                cat.inverse_of(f).ok_or_else(|| {
                    PseudoCatError::Structure(format!("morphism {f} has no inverse"))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { cat, inverse })
    }

    /// Uses a supplied inverse table, checked against the composition table.
    pub fn with_inverse(cat: FiniteCategory, inverse: Vec<usize>) -> Result<Self, PseudoCatError> {
        if inverse.len() != cat.n_morphisms() {
            return Err(PseudoCatError::Structure("inverse table length".into()));
        }
        for (f, &g) in inverse.iter().enumerate() {
            let ok = g < cat.n_morphisms()
                && cat.compose(g, f) == Some(cat.identity(cat.src(f)))
                && cat.compose(f, g) == Some(cat.identity(cat.tgt(f)));
            if !ok {
                return Err(PseudoCatError::Structure(format!("{g} is not inverse to {f}")));
            }
        }
        Ok(Self { cat, inverse })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }
}

impl std::ops::Deref for FiniteGroupoid {
    type Target = FiniteCategory;
    fn deref(&self) -> &FiniteCategory {
        &self.cat
    }
}

/// Object and morphism maps between finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct GroupoidFunctor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Self { obj: (0..c.n_objects()).collect(), mor: (0..c.n_morphisms()).collect() }
    }

    /// Checks endpoints, identities and composition table-wise.
    pub fn validate(&self, from: &FiniteCategory, to: &FiniteCategory) -> Result<(), PseudoCatError> {
        let bad = |msg: String| Err(PseudoCatError::Structure(msg));
        if self.obj.len() != from.n_objects() || self.mor.len() != from.n_morphisms() {
            return bad("functor table lengths".into());
        }
        if self.obj.iter().any(|&c| c >= to.n_objects()) || self.mor.iter().any(|&f| f >= to.n_morphisms()) {
            return bad("functor maps out of range".into());
        }
        for f in 0..from.n_morphisms() {
            let ff = self.mor[f];
            if to.src(ff) != self.obj[from.src(f)] || to.tgt(ff) != self.obj[from.tgt(f)] {
                return bad(format!("functor breaks endpoints of morphism {f}"));
            }
        }
        for c in 0..from.n_objects() {
            if self.mor[from.identity(c)] != to.identity(self.obj[c]) {
                return bad(format!("functor does not preserve the identity of {c}"));
            }
        }
        for f in 0..from.n_morphisms() {
            for g in from.out_of(from.tgt(f)) {
                if to.compose(self.mor[g], self.mor[f]) != Some(self.mor[from.comp(g, f)]) {
                    return bad(format!("functor does not preserve ({g},{f})"));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            obj: first.obj.iter().map(|&c| self.obj[c]).collect(),
            mor: first.mor.iter().map(|&f| self.mor[f]).collect(),
        }
    }
}

/// Strict pullback of a cospan `a → c ← b`, with its projections.
#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub groupoid: FiniteGroupoid,
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<(usize, usize)>,
    pub proj_a: GroupoidFunctor,
    pub proj_b: GroupoidFunctor,
}

pub fn fiber_product(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    c: &FiniteGroupoid,
    fa: &GroupoidFunctor,
    fb: &GroupoidFunctor,
) -> Result<FiberProduct, PseudoCatError> {
    fa.validate(a, c)?;
    fb.validate(b, c)?;
    let objects: Vec<(usize, usize)> = (0..a.n_objects())
        .flat_map(|x| (0..b.n_objects()).map(move |y| (x, y)))
        .filter(|&(x, y)| fa.obj[x] == fb.obj[y])
        .collect();
    let morphisms: Vec<(usize, usize)> = (0..a.n_morphisms())
        .flat_map(|f| (0..b.n_morphisms()).map(move |g| (f, g)))
        .filter(|&(f, g)| fa.mor[f] == fb.mor[g])
        .collect();
    let obj_index: BTreeMap<(usize, usize), usize> =
        objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mor_index: BTreeMap<(usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let src = morphisms.iter().map(|&(f, g)| obj_index[&(a.src(f), b.src(g))]).collect();
    let tgt = morphisms.iter().map(|&(f, g)| obj_index[&(a.tgt(f), b.tgt(g))]).collect();
    let identity = objects.iter().map(|&(x, y)| mor_index[&(a.identity(x), b.identity(y))]).collect();
    let cat = FiniteCategory::from_fn(objects.len(), src, tgt, identity, |p, q| {
        let (f1, g1) = morphisms[p];
        let (f0, g0) = morphisms[q];
        mor_index[&(a.comp(f1, f0), b.comp(g1, g0))]
    })?;
    let inverse = morphisms.iter().map(|&(f, g)| mor_index[&(a.inverse(f), b.inverse(g))]).collect();
    let groupoid = FiniteGroupoid::with_inverse(cat, inverse)?;
    let proj_a = GroupoidFunctor {
        obj: objects.iter().map(|p| p.0).collect(),
        mor: morphisms.iter().map(|p| p.0).collect(),
    };
    let proj_b = GroupoidFunctor {
        obj: objects.iter().map(|p| p.1).collect(),
        mor: morphisms.iter().map(|p| p.1).collect(),
    };
    Ok(FiberProduct { groupoid, objects, morphisms, proj_a, proj_b })
}
