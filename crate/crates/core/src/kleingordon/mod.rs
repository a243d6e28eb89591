//! The free scalar field on lattice regions: Klein-Gordon operator, exact
//! Green operators, and the three isomorphic Poisson spaces of observables,
//! solutions and initial data.
//!
//! The operator is the unit-spacing leapfrog d'Alembertian
//! `(Pφ)(t,x) = φ(t+1,x) + φ(t−1,x) − φ(t,x+1) − φ(t,x−1) + m²φ(t,x)`,
//! defined on sites whose whole stencil lies in the region.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{wrap, LatticeError, LatticeSpacetime, Shift, Site, SiteSet};
use crate::numeric::{fmt_q, Q};

mod functorial;
mod green;
mod poisson;
mod spaces;


pub use functorial::{data_map, functorial_maps, observables_map, solutions_map, FunctorialMaps};
pub use green::{causal_propagator, green_advanced, green_retarded};
pub(crate) use green::propagator_on;
pub use poisson::{PoissonMap, PoissonSpace};
pub use spaces::{
    data_form, data_space, evolve_data, iso_chain, observables_space, res_map, solutions_space, IsoChain,
    Observables, Solutions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KgError {
    #[error("source is nonzero at {0}, outside the stencil interior")]
    SourceTouchesBoundary(Site),
    #[error("region has an empty stencil interior")]
    DegenerateRegion,
    #[error("region is not a slab of full rows")]
    NotASlab,
    #[error("morphism image contains no Cauchy row of the target")]
    NotCauchy,
    #[error("map does not preserve the Poisson structure: {0}")]
    NotFormPreserving(String),
    #[error("matrix is singular")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not antisymmetric")]
    NotAntisymmetric,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A real function on a finite set of sites, with exact values.
///
/// The keys are the domain; reading outside it gives zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    l: u32,
    values: BTreeMap<Site, Q>,
}

impl Field {
    pub fn from_fn(l: u32, sites: impl IntoIterator<Item = Site>, f: impl Fn(Site) -> Q) -> Self {
        let values = sites
            .into_iter()
            .map(|s| {
                let s = Site::new(s.t, wrap(s.x, l));
                (s, f(s))
            })
            .collect();
        Self { l, values }
    }

    pub fn zero(m: &LatticeSpacetime) -> Self {
        Self::from_fn(m.circumference(), m.sites().iter().copied(), |_| Q::zero())
    }

    /// `δ_p` on the sites of `m`.
    pub fn delta(m: &LatticeSpacetime, p: Site) -> Result<Self, KgError> {
        let p = Site::new(p.t, wrap(p.x, m.circumference()));
        if !m.contains(p) {
            return Err(LatticeError::SiteNotInSpacetime(p).into());
        }
        Ok(Self::from_fn(m.circumference(), m.sites().iter().copied(), |s| {
            if s == p {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }))
    }

    pub fn circumference(&self) -> u32 {
        self.l
    }

    pub fn get(&self, s: Site) -> Q {
        self.values.get(&Site::new(s.t, wrap(s.x, self.l))).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, s: Site, v: Q) {
        self.values.insert(Site::new(s.t, wrap(s.x, self.l)), v);
    }

    pub fn values(&self) -> &BTreeMap<Site, Q> {
        &self.values
    }

    pub fn domain(&self) -> SiteSet {
        self.values.keys().copied().collect()
    }

    pub fn support(&self) -> SiteSet {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(s, _)| *s).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// The same values read on `sites` (zero where undefined).
    pub fn restrict(&self, sites: &SiteSet) -> Field {
        Field::from_fn(self.l, sites.iter().copied(), |s| self.get(s))
    }

    pub fn scaled(&self, c: &Q) -> Field {
        Field { l: self.l, values: self.values.iter().map(|(s, v)| (*s, v * c)).collect() }
    }

    /// Pushforward along a translation.
    pub fn translated(&self, shift: Shift) -> Field {
        Field::from_fn(self.l, self.values.keys().map(|&s| shift.apply(s, self.l)), |s| {
            self.get(shift.inverse(self.l).apply(s, self.l))
        })
    }

    /// `Σ_s self(s)·other(s)` with the counting measure.
    pub fn pairing(&self, other: &Field) -> Q {
        self.values.iter().fold(Q::zero(), |acc, (s, v)| acc + v * other.get(*s))
    }

    fn zip(&self, other: &Field, op: impl Fn(&Q, &Q) -> Q) -> Field {
        let sites = self.values.keys().chain(other.values.keys()).copied().collect::<SiteSet>();
        Field::from_fn(self.l, sites, |s| op(&self.get(s), &other.get(s)))
    }
}

impl Add for &Field {
    type Output = Field;
    fn add(self, rhs: &Field) -> Field {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Field {
    type Output = Field;
    fn sub(self, rhs: &Field) -> Field {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.scaled(&-Q::from_integer(1.into()))
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            t: i64,
            x: i64,
            value: String,
        }
        let mut seq = s.serialize_seq(Some(self.values.len()))?;
        for (site, v) in &self.values {
            seq.serialize_element(&Entry { t: site.t, x: site.x, value: fmt_q(v) })?;
        }
        seq.end()
    }
}

/// Coefficients of the column `P δ_p`, merged where the cylinder identifies sites.
pub fn stencil_column(p: Site, l: u32, m0sq: &Q) -> BTreeMap<Site, Q> {
    let one = Q::from_integer(1.into());
    let mut col = BTreeMap::new();
    let mut add = |s: Site, c: Q| {
        *col.entry(Site::new(s.t, wrap(s.x, l))).or_insert_with(Q::zero) += c;
    };
    add(Site::new(p.t + 1, p.x), one.clone());
    add(Site::new(p.t - 1, p.x), one.clone());
    add(Site::new(p.t, p.x + 1), -one.clone());
    add(Site::new(p.t, p.x - 1), -one);
    add(p, m0sq.clone());
    col
}

/// `P ψ` as a function on all of `m`, for `ψ` supported on the stencil interior.
///
/// These are the relations quotiented out of the observables.
pub fn p_image(m: &LatticeSpacetime, psi: &Field, m0sq: &Q) -> Result<Field, KgError> {
    let interior = m.stencil_interior();
    let mut out = Field::zero(m);
    for (p, c) in psi.values().iter().filter(|(_, c)| !c.is_zero()) {
        if !interior.contains(p) {
            return Err(KgError::SourceTouchesBoundary(*p));
        }
        for (s, coeff) in stencil_column(*p, m.circumference(), m0sq) {
            let v = out.get(s) + c * coeff;
            out.set(s, v);
        }
    }
    Ok(out)
}

/// `P φ` on the stencil interior of `m`.
pub fn apply_p(m: &LatticeSpacetime, phi: &Field, m0sq: &Q) -> Field {
    let l = m.circumference();
    Field::from_fn(l, m.stencil_interior(), |s| {
        phi.get(Site::new(s.t + 1, s.x)) + phi.get(Site::new(s.t - 1, s.x))
            - phi.get(Site::new(s.t, s.x + 1))
            - phi.get(Site::new(s.t, s.x - 1))
            + m0sq * phi.get(s)
    })
}
