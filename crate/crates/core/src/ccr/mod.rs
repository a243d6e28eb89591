//! CCR quantization of Poisson vector spaces as normal-ordered polynomials.
//!
//! Elements of `CCR(V)` are finite sums of words in the basis of `V` with
//! Gaussian-rational coefficients. A word is in normal form when its letters
//! are nonincreasing; the defining relation `v_a v_b = v_b v_a + i τ(v_a,v_b) 1`
//! rewrites any increasing adjacent pair.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::kleingordon::{KgError, PoissonMap, PoissonSpace};
use crate::numeric::{cq, fmt_cq, Cq, QMatrix, Q};

mod literal;

#[cfg(test)]
mod tests;

/// A word of basis indices, leftmost letter first.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcrError {
    #[error("letter {0} is out of range for a space of dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("generator map is not a Poisson map: {0}")]
    NotPoisson(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// `CCR(V, τ)`, presented by its Poisson space.
#[derive(Debug, Clone)]
pub struct CcrAlgebra {
    space: Arc<PoissonSpace>,
}

impl PartialEq for CcrAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }
}

impl Eq for CcrAlgebra {}

/// An element of a CCR algebra in normal form; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcrElement {
    algebra: CcrAlgebra,
    terms: BTreeMap<Word, Cq>,
}

fn accumulate(terms: &mut BTreeMap<Word, Cq>, w: Word, c: Cq) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn is_normal(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// Positions `k` where `w[k] < w[k+1]`, i.e. where the relation applies.
pub fn redexes(w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&k| w[k] < w[k + 1]).collect()
}

impl CcrAlgebra {
    pub fn new(space: PoissonSpace) -> Self {
        Self { space: Arc::new(space) }
    }

    pub fn space(&self) -> &PoissonSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn tau(&self, a: usize, b: usize) -> &Q {
        self.space.form().get(a, b)
    }

    /// `i τ(v_a, v_b)`.
    fn contraction(&self, a: usize, b: usize) -> Cq {
        cq(Q::zero(), self.tau(a, b).clone())
    }

    fn check_word(&self, w: &[usize]) -> Result<(), CcrError> {
        match w.iter().find(|&&a| a >= self.dim()) {
            Some(&a) => Err(CcrError::IndexOutOfRange(a, self.dim())),
            None => Ok(()),
        }
    }

    /// One application of the relation at position `k`: returns the swapped
    /// word and the contracted word with its coefficient `i τ(w_k, w_{k+1})`.
    pub fn rewrite_at(&self, w: &[usize], k: usize) -> ((Word, Cq), (Word, Cq)) {
        let mut swapped = w.to_vec();
        swapped.swap(k, k + 1);
        let mut contracted = w[..k].to_vec();
        contracted.extend_from_slice(&w[k + 2..]);
        ((swapped, Cq::one()), (contracted, self.contraction(w[k], w[k + 1])))
    }

    /// Appends letter `a` to a normal word and moves it left into place.
    fn insert(&self, w: &[usize], a: usize, c: &Cq, out: &mut BTreeMap<Word, Cq>) {
        let mut k = w.len();
        while k > 0 && w[k - 1] < a {
            // w[..k-1] · w[k-1] · a · w[k..]  =  ... a · w[k-1] ...  +  i τ(w[k-1], a) · w[..k-1] w[k..]
            let coeff = self.contraction(w[k - 1], a);
            if !coeff.is_zero() {
                let mut contracted = w[..k - 1].to_vec();
                contracted.extend_from_slice(&w[k..]);
                accumulate(out, contracted, c * coeff);
            }
            k -= 1;
        }
        let mut placed = w[..k].to_vec();
        placed.push(a);
        placed.extend_from_slice(&w[k..]);
        accumulate(out, placed, c.clone());
    }

    /// Normal form of a single word.
    fn normal_word(&self, w: &[usize]) -> BTreeMap<Word, Cq> {
        let mut acc: BTreeMap<Word, Cq> = BTreeMap::from([(Vec::new(), Cq::one())]);
        for &a in w {
            let mut next = BTreeMap::new();
            for (u, c) in &acc {
                self.insert(u, a, c, &mut next);
            }
            acc = next;
        }
        acc
    }

    /// Normal form of `Σ c_w · w`.
    pub fn normal_form<'a>(
        &self,
        raw: impl IntoIterator<Item = (&'a [usize], Cq)>,
    ) -> Result<CcrElement, CcrError> {
        let mut terms = BTreeMap::new();
        for (w, c) in raw {
            self.check_word(w)?;
            for (u, d) in self.normal_word(w) {
                accumulate(&mut terms, u, &c * d);
            }
        }
        Ok(CcrElement { algebra: self.clone(), terms })
    }

    pub fn zero(&self) -> CcrElement {
        CcrElement { algebra: self.clone(), terms: BTreeMap::new() }
    }

    pub fn unit(&self) -> CcrElement {
        self.scalar(Cq::one())
    }

    pub fn scalar(&self, c: Cq) -> CcrElement {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, Vec::new(), c);
        CcrElement { algebra: self.clone(), terms }
    }

    pub fn generator(&self, a: usize) -> Result<CcrElement, CcrError> {
        self.check_word(&[a])?;
        Ok(CcrElement { algebra: self.clone(), terms: BTreeMap::from([(vec![a], Cq::one())]) })
    }

    /// `Σ_a v_a e_a` for a vector of the underlying space.
    pub fn linear(&self, v: &[Q]) -> Result<CcrElement, CcrError> {
        if v.len() != self.dim() {
            return Err(CcrError::IndexOutOfRange(v.len(), self.dim()));
        }
        let mut terms = BTreeMap::new();
        for (a, x) in v.iter().enumerate() {
            accumulate(&mut terms, vec![a], cq(x.clone(), Q::zero()));
        }
        Ok(CcrElement { algebra: self.clone(), terms })
    }
}

impl CcrElement {
    pub fn algebra(&self) -> &CcrAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Word, Cq> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn same_parent(&self, other: &CcrElement) -> Result<(), CcrError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(CcrError::ParentMismatch)
        }
    }

    pub fn add(&self, other: &CcrElement) -> Result<CcrElement, CcrError> {
        self.same_parent(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(CcrElement { algebra: self.algebra.clone(), terms })
    }

    pub fn scale(&self, c: &Cq) -> CcrElement {
        let mut terms = BTreeMap::new();
        for (w, d) in &self.terms {
            accumulate(&mut terms, w.clone(), d * c);
        }
        CcrElement { algebra: self.algebra.clone(), terms }
    }

    pub fn sub(&self, other: &CcrElement) -> Result<CcrElement, CcrError> {
        self.add(&other.scale(&-Cq::one()))
    }

    /// Concatenate, then normalize.
    pub fn multiply(&self, other: &CcrElement) -> Result<CcrElement, CcrError> {
        self.same_parent(other)?;
        let mut terms = BTreeMap::new();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                // Appending letters one at a time keeps every intermediate word normal.
                let mut partial = BTreeMap::from([(u.clone(), c * d)]);
                for &a in v {
                    let mut next = BTreeMap::new();
                    for (w, e) in &partial {
                        self.algebra.insert(w, a, e, &mut next);
                    }
                    partial = next;
                }
                for (w, e) in partial {
                    accumulate(&mut terms, w, e);
                }
            }
        }
        Ok(CcrElement { algebra: self.algebra.clone(), terms })
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &CcrElement) -> Result<CcrElement, CcrError> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// Reverses words and conjugates coefficients; generators are self-adjoint.
    pub fn star(&self) -> CcrElement {
        let raw: Vec<(Word, Cq)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.iter().rev().copied().collect(), c.conj()))
            .collect();
        self.algebra
            .normal_form(raw.iter().map(|(w, c)| (w.as_slice(), c.clone())))
            .expect("letters already in range")
    }
}

impl fmt::Display for CcrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|a| format!("e{}", a + 1)).collect::<Vec<_>>().join(".")
                };
                format!("{}*{}", fmt_cq(c), word)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for CcrElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `CCR(f)`, determined by its action on generators.
#[derive(Debug, Clone)]
pub struct CcrMorphism {
    map: PoissonMap,
    src: CcrAlgebra,
    tgt: CcrAlgebra,
}

impl CcrMorphism {
    pub fn new(map: PoissonMap) -> Self {
        let src = CcrAlgebra::new(map.src().clone());
        let tgt = CcrAlgebra::new(map.tgt().clone());
        Self { map, src, tgt }
    }

    /// Refuses generator maps that do not preserve the forms.
    pub fn from_matrix(src: PoissonSpace, tgt: PoissonSpace, matrix: QMatrix) -> Result<Self, CcrError> {
        match PoissonMap::new(src, tgt, matrix) {
            Ok(map) => Ok(Self::new(map)),
            Err(KgError::NotFormPreserving(w)) => Err(CcrError::NotPoisson(w)),
            Err(e) => Err(CcrError::NotPoisson(e.to_string())),
        }
    }

    /// Uses the given algebras as source and target, so elements can be shared.
    pub fn between(map: PoissonMap, src: &CcrAlgebra, tgt: &CcrAlgebra) -> Result<Self, CcrError> {
        if src.space() != map.src() || tgt.space() != map.tgt() {
            return Err(CcrError::ParentMismatch);
        }
        Ok(Self { map, src: src.clone(), tgt: tgt.clone() })
    }

    pub fn map(&self) -> &PoissonMap {
        &self.map
    }

    pub fn src(&self) -> &CcrAlgebra {
        &self.src
    }

    pub fn tgt(&self) -> &CcrAlgebra {
        &self.tgt
    }

    /// Applies the generator action letterwise and renormalizes.
    pub fn apply(&self, a: &CcrElement) -> Result<CcrElement, CcrError> {
        if a.algebra != self.src {
            return Err(CcrError::ParentMismatch);
        }
        let images: Vec<CcrElement> = (0..self.src.dim())
            .map(|j| self.tgt.linear(&self.map.matrix().column(j)))
            .collect::<Result<_, _>>()?;
        let mut out = self.tgt.zero();
        for (w, c) in &a.terms {
            let mut term = self.tgt.scalar(c.clone());
            for &letter in w {
                term = term.multiply(&images[letter])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CcrMorphism) -> Result<CcrMorphism, CcrError> {
        let map = self.map.after(&first.map).map_err(|e| CcrError::NotPoisson(e.to_string()))?;
        Ok(Self { map, src: first.src.clone(), tgt: self.tgt.clone() })
    }

    pub fn inverse(&self) -> Result<CcrMorphism, CcrError> {
        let map = self.map.inverse().map_err(|e| CcrError::NotPoisson(e.to_string()))?;
        Ok(Self { map, src: self.tgt.clone(), tgt: self.src.clone() })
    }
}

/// `ccr_map(f, a)`.
pub fn ccr_map(f: &CcrMorphism, a: &CcrElement) -> Result<CcrElement, CcrError> {
    f.apply(a)
}
