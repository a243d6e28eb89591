//! JSON interchange for finite categories and pseudo-categories.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FiniteCategory, FiniteGroupoid, GroupoidFunctor, PseudoCat, PseudoCatError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `objects` are labels; `compose` holds triples `[g, f, g∘f]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<usize>>,
}

/// `hcomp` is split into object triples `[h1, h0, h1⊙h0]` and cell triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcompJson {
    pub objects: Vec<[usize; 3]>,
    pub morphisms: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoCatJson {
    pub c0: CategoryJson,
    pub c1: CategoryJson,
    pub src: GroupoidFunctor,
    pub tgt: GroupoidFunctor,
    pub hcomp: HcompJson,
    pub hunit: GroupoidFunctor,
    /// Quadruples `[h2, h1, h0, cell]`.
    pub assoc: Vec<[usize; 4]>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

impl CategoryJson {
    pub fn from_category(c: &FiniteCategory) -> Self {
        let morphisms = (0..c.n_morphisms())
            .map(|f| MorphismEntry {
                id: f,
                src: c.src(f),
                tgt: c.tgt(f),
                label: Some(c.morphism_label(f).to_string()),
            })
            .collect();
        let mut compose = Vec::new();
        for f in 0..c.n_morphisms() {
            for g in c.out_of(c.tgt(f)) {
                compose.push([g, f, c.comp(g, f)]);
            }
        }
        compose.sort_unstable();
        Self {
            objects: (0..c.n_objects()).map(|o| c.object_label(o).to_string()).collect(),
            morphisms,
            identities: (0..c.n_objects()).map(|o| c.identity(o)).collect(),
            compose,
            inverse: None,
        }
    }

    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let mut out = Self::from_category(g);
        out.inverse = Some((0..g.n_morphisms()).map(|f| g.inverse(f)).collect());
        out
    }

    pub fn to_category(&self) -> Result<FiniteCategory, PseudoCatError> {
        let n = self.morphisms.len();
        let mut src = vec![0; n];
        let mut tgt = vec![0; n];
        let mut labels = vec![String::new(); n];
        let mut seen = vec![false; n];
        for m in &self.morphisms {
            if m.id >= n || seen[m.id] {
                return Err(PseudoCatError::Structure(format!("morphism ids must be 0..{n}, each once")));
            }
            seen[m.id] = true;
            src[m.id] = m.src;
            tgt[m.id] = m.tgt;
            labels[m.id] = m.label.clone().unwrap_or_else(|| format!("m{}", m.id));
        }
        let cat = FiniteCategory::new(
            self.objects.len(),
            src,
            tgt,
            self.identities.clone(),
            self.compose.iter().map(|&[g, f, gf]| ((g, f), gf)),
        )?;
        Ok(cat.with_labels(self.objects.clone(), labels))
    }

    /// Uses the supplied inverse table when present, otherwise searches.
    pub fn to_groupoid(&self) -> Result<FiniteGroupoid, PseudoCatError> {
        let cat = self.to_category()?;
        match &self.inverse {
            Some(inv) => FiniteGroupoid::with_inverse(cat, inv.clone()),
            None => FiniteGroupoid::new(cat),
        }
    }
}

impl PseudoCatJson {
    pub fn from_pseudo(p: &PseudoCat) -> Self {
        let mut hobj: Vec<[usize; 3]> = p.hcomp_obj.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        let mut hmor: Vec<[usize; 3]> = p.hcomp_mor.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        let mut assoc: Vec<[usize; 4]> = p.assoc.iter().map(|(&(a, b, c), &d)| [a, b, c, d]).collect();
        hobj.sort_unstable();
        hmor.sort_unstable();
        assoc.sort_unstable();
        Self {
            c0: CategoryJson::from_groupoid(&p.c0),
            c1: CategoryJson::from_groupoid(&p.c1),
            src: p.src.clone(),
            tgt: p.tgt.clone(),
            hcomp: HcompJson { objects: hobj, morphisms: hmor },
            hunit: p.hunit.clone(),
            assoc,
            lunit: p.lunit.clone(),
            runit: p.runit.clone(),
        }
    }

    /// Structural validation only; laws are left to `check_coherence`.
    pub fn to_pseudo(&self) -> Result<PseudoCat, PseudoCatError> {
        let c0 = self.c0.to_groupoid()?;
        let c1 = self.c1.to_groupoid()?;
        self.src.validate(&c1, &c0)?;
        self.tgt.validate(&c1, &c0)?;
        self.hunit.validate(&c0, &c1)?;
        let nh = c1.n_objects();
        let nc = c1.n_morphisms();
        if self.lunit.len() != nh || self.runit.len() != nh {
            return Err(PseudoCatError::Structure("unitor tables must cover every horizontal".into()));
        }
        if self.lunit.iter().chain(&self.runit).any(|&a| a >= nc) {
            return Err(PseudoCatError::Structure("unitor component out of range".into()));
        }
        let hcomp_obj: HashMap<(usize, usize), usize> =
            self.hcomp.objects.iter().map(|&[a, b, c]| ((a, b), c)).collect();
        let hcomp_mor: HashMap<(usize, usize), usize> =
            self.hcomp.morphisms.iter().map(|&[a, b, c]| ((a, b), c)).collect();
        if hcomp_obj.values().any(|&h| h >= nh) || hcomp_mor.values().any(|&a| a >= nc) {
            return Err(PseudoCatError::Structure("horizontal composite out of range".into()));
        }
        let assoc = self.assoc.iter().map(|&[a, b, c, d]| ((a, b, c), d)).collect::<HashMap<_, _>>();
        if assoc.values().any(|&a| a >= nc) {
            return Err(PseudoCatError::Structure("associator component out of range".into()));
        }
        Ok(PseudoCat {
            c0,
            c1,
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            hcomp_obj,
            hcomp_mor,
            hunit: self.hunit.clone(),
            assoc,
            lunit: self.lunit.clone(),
            runit: self.runit.clone(),
        })
    }
}

pub fn category_to_json(c: &FiniteCategory) -> String {
    serde_json::to_string_pretty(&CategoryJson::from_category(c)).expect("serializable")
}

pub fn category_from_json(s: &str) -> Result<FiniteCategory, PseudoCatError> {
    let j: CategoryJson = serde_json::from_str(s).map_err(|e| PseudoCatError::Structure(e.to_string()))?;
    j.to_category()
}

pub fn pseudo_to_json(p: &PseudoCat) -> String {
    serde_json::to_string_pretty(&PseudoCatJson::from_pseudo(p)).expect("serializable")
}

pub fn pseudo_from_json(s: &str) -> Result<PseudoCat, PseudoCatError> {
    let j: PseudoCatJson = serde_json::from_str(s).map_err(|e| PseudoCatError::Structure(e.to_string()))?;
    j.to_pseudo()
}
