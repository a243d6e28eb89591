use std::fmt;

use serde::Serialize;

use super::{
    causal_shadow, convexity_witness, LatticeError, LatticeSpacetime, Shift, Site, SiteSet,
};

/// A translation embedding `source → target` with causally convex image.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocMorphism {
    source: LatticeSpacetime,
    target: LatticeSpacetime,
    shift: Shift,
}

impl LocMorphism {
    pub fn new(
        source: LatticeSpacetime,
        target: LatticeSpacetime,
        shift: Shift,
    ) -> Result<Self, LatticeError> {
        let (ls, lt) = (source.circumference(), target.circumference());
        if ls != lt {
            return Err(LatticeError::CircumferenceMismatch(ls, lt));
        }
        let shift = shift.normalized(ls);
        let image: SiteSet = source.sites().iter().map(|&s| shift.apply(s, ls)).collect();
        if let Some(s) = image.iter().find(|s| !target.contains(**s)) {
            return Err(LatticeError::NotContained(*s));
        }
        if let Some(w) = convexity_witness(&target, &image)? {
            return Err(LatticeError::NotCausallyConvex(w));
        }
        Ok(Self { source, target, shift })
    }

    pub fn identity(m: &LatticeSpacetime) -> Self {
        Self { source: m.clone(), target: m.clone(), shift: Shift::IDENTITY }
    }

    /// Inclusion of a sub-region.
    pub fn inclusion(sub: &LatticeSpacetime, sup: &LatticeSpacetime) -> Result<Self, LatticeError> {
        Self::new(sub.clone(), sup.clone(), Shift::IDENTITY)
    }

    pub fn source(&self) -> &LatticeSpacetime {
        &self.source
    }

    pub fn target(&self) -> &LatticeSpacetime {
        &self.target
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn apply(&self, s: Site) -> Site {
        self.shift.apply(s, self.source.circumference())
    }

    pub fn image(&self) -> SiteSet {
        self.source.sites().iter().map(|&s| self.apply(s)).collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LocMorphism) -> Result<Self, LatticeError> {
        if first.target != self.source {
            return Err(LatticeError::NotComposable);
        }
        let l = self.source.circumference();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            shift: self.shift.then(first.shift, l),
        })
    }

    /// Translation isomorphism onto the image, then the inclusion of the image.
    pub fn factor(&self) -> (LocMorphism, LocMorphism) {
        let image = self.source.translate(self.shift);
        let iso = LocMorphism { source: self.source.clone(), target: image.clone(), shift: self.shift };
        let inc = LocMorphism { source: image, target: self.target.clone(), shift: Shift::IDENTITY };
        (iso, inc)
    }
}

impl fmt::Display for LocMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "translate(dt={}, dx={}) : {} sites -> {} sites",
            self.shift.dt,
            self.shift.dx,
            self.source.len(),
            self.target.len()
        )
    }
}

/// The image contains a Cauchy row of the target.
pub fn is_cauchy_morphism(f: &LocMorphism) -> bool {
    let image = f.image();
    let target = f.target();
    target.cauchy_rows().into_iter().any(|t| {
        target.row(t).into_iter().all(|x| image.contains(&Site::new(t, x)))
    })
}

/// `J_M(im f1) ∩ im f2 = ∅`.
pub fn causally_disjoint(f1: &LocMorphism, f2: &LocMorphism) -> Result<bool, LatticeError> {
    if f1.target() != f2.target() {
        return Err(LatticeError::TargetMismatch);
    }
    let shadow = causal_shadow(f1.target(), &f1.image())?;
    Ok(f2.image().is_disjoint(&shadow))
}
