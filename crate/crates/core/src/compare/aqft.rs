use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::ccr::{CcrAlgebra, CcrMorphism};
use crate::kleingordon::{observables_space, Field, Observables, PoissonMap};
use crate::lattice::{
    causally_disjoint, is_cauchy_morphism, period, LatticeError, LatticeSpacetime, LocMorphism, Site,
};
use crate::numeric::{QMatrix, Q};

use super::report::{morphism_key, CheckRecord, Report};
use super::{Aqft, CompareError};

impl<T: Aqft + ?Sized> Aqft for &T {
    fn circumference(&self) -> u32 {
        (**self).circumference()
    }
    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError> {
        (**self).algebra(m)
    }
    fn morphism(&self, f: &LocMorphism) -> Result<CcrMorphism, CompareError> {
        (**self).morphism(f)
    }
}

/// `A_KG(M) = CCR(L(M))`, `A_KG(f) = CCR(L(f))`.
///
/// Observable spaces are cached per region, so algebras of the same region
/// share their presentation.
#[derive(Debug)]
pub struct KgAqft {
    l: u32,
    m0sq: Q,
    cache: Mutex<BTreeMap<LatticeSpacetime, (Arc<Observables>, CcrAlgebra)>>,
}

impl KgAqft {
    pub fn new(l: u32, m0sq: Q) -> Self {
        Self { l, m0sq, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn m0sq(&self) -> &Q {
        &self.m0sq
    }

    pub fn observables(&self, m: &LatticeSpacetime) -> Result<Arc<Observables>, CompareError> {
        Ok(self.entry(m)?.0)
    }

    fn entry(&self, m: &LatticeSpacetime) -> Result<(Arc<Observables>, CcrAlgebra), CompareError> {
        if m.circumference() != self.l {
            return Err(LatticeError::CircumferenceMismatch(m.circumference(), self.l).into());
        }
        if let Some(hit) = self.cache.lock().expect("cache lock").get(m) {
            return Ok(hit.clone());
        }
        let obs = observables_space(m, &self.m0sq)?;
        let alg = CcrAlgebra::new(obs.space().clone());
        let value = (Arc::new(obs), alg);
        self.cache.lock().expect("cache lock").insert(m.clone(), value.clone());
        Ok(value)
    }

    /// `L(f)` between the cached observable spaces.
    pub fn observables_map(&self, f: &LocMorphism) -> Result<PoissonMap, CompareError> {
        let src = self.observables(f.source())?;
        let tgt = self.observables(f.target())?;
        let columns = src
            .basis_sites()
            .iter()
            .map(|&b| tgt.coordinates(&Field::delta(f.target(), f.apply(b))?))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = QMatrix::from_columns(tgt.dim(), &columns);
        Ok(PoissonMap::new(src.space().clone(), tgt.space().clone(), matrix)?)
    }
}

impl Aqft for KgAqft {
    fn circumference(&self) -> u32 {
        self.l
    }

    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError> {
        Ok(self.entry(m)?.1)
    }

    fn morphism(&self, f: &LocMorphism) -> Result<CcrMorphism, CompareError> {
        let map = self.observables_map(f)?;
        Ok(CcrMorphism::between(map, &self.algebra(f.source())?, &self.algebra(f.target())?)?)
    }
}

/// `A` with `A(f)` composed with `CCR(−1)` whenever source and target have
/// different sign `s(M)`, where `s(M) = −1` iff `M` has fewer observables than
/// a full slab.
///
/// The sign is a function of `dim L(M)`, which Cauchy morphisms preserve, so
/// the twist is functorial and trivial on every Cauchy morphism.
#[derive(Debug)]
pub struct SignTwisted<A> {
    inner: A,
}

impl<A: Aqft> SignTwisted<A> {
    pub fn new(inner: A) -> Self {
        Self { inner }
    }

    pub fn sign(&self, m: &LatticeSpacetime) -> Result<i8, CompareError> {
        let full = 2 * period(self.inner.circumference()) as usize;
        Ok(if self.inner.algebra(m)?.dim() < full { -1 } else { 1 })
    }

    /// Whether `f` is sent to the negated map.
    pub fn is_twisted(&self, f: &LocMorphism) -> Result<bool, CompareError> {
        Ok(self.sign(f.source())? != self.sign(f.target())?)
    }
}

impl<A: Aqft> Aqft for SignTwisted<A> {
    fn circumference(&self) -> u32 {
        self.inner.circumference()
    }

    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError> {
        self.inner.algebra(m)
    }

    fn morphism(&self, f: &LocMorphism) -> Result<CcrMorphism, CompareError> {
        let plain = self.inner.morphism(f)?;
        if !self.is_twisted(f)? {
            return Ok(plain);
        }
        let map = plain.map();
        let negated = PoissonMap::new(map.src().clone(), map.tgt().clone(), -map.matrix())?;
        Ok(CcrMorphism::between(negated, plain.src(), plain.tgt())?)
    }
}

/// Images of the generators of `A(D1)` and `A(D2)` commute in `A(M)` for
/// each causally disjoint pair `f1 : D1 → M`, `f2 : D2 → M`.
pub fn check_einstein_causality(
    a: &dyn Aqft,
    pairs: &[(LocMorphism, LocMorphism)],
) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for (f1, f2) in pairs {
        if !causally_disjoint(f1, f2)? {
            return Err(CompareError::Config(format!("{f1} and {f2} are not causally disjoint")));
        }
        let (a1, a2) = (a.morphism(f1)?, a.morphism(f2)?);
        let lhs1: Vec<_> = (0..a1.src().dim()).map(|i| a1.apply(&a1.src().generator(i)?)).collect::<Result<_, _>>()?;
        let lhs2: Vec<_> = (0..a2.src().dim()).map(|i| a2.apply(&a2.src().generator(i)?)).collect::<Result<_, _>>()?;
        let mut first_nonzero = None;
        for x in &lhs1 {
            for y in &lhs2 {
                let c = x.commutator(y)?;
                if !c.is_zero() && first_nonzero.is_none() {
                    first_nonzero = Some(c.to_string());
                }
            }
        }
        report.push(CheckRecord::new(
            "einstein-causality",
            format!("{} | {}", morphism_key(f1), morphism_key(f2)),
            first_nonzero.is_none(),
            serde_json::Value::String(first_nonzero.unwrap_or_else(|| "0".into())),
            serde_json::Value::String("0".into()),
            "AQFT causality axiom",
        ));
    }
    Ok(report)
}

/// `A(f)` is invertible for each Cauchy morphism `f`.
pub fn check_time_slice(a: &dyn Aqft, morphisms: &[LocMorphism]) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for f in morphisms {
        if !is_cauchy_morphism(f) {
            return Err(CompareError::NotCauchy);
        }
        let m = a.morphism(f)?;
        let matrix = m.map().matrix();
        report.push(CheckRecord::new(
            "time-slice",
            morphism_key(f),
            m.map().is_isomorphism(),
            serde_json::json!({ "rank": matrix.rank() }),
            serde_json::json!({ "rank": matrix.rows().max(matrix.cols()) }),
            "AQFT time-slice axiom",
        ));
    }
    Ok(report)
}

/// Causally disjoint pairs of diamond inclusions into the slab `[0, t_max]`,
/// evenly subsampled to at most `count` pairs.
pub fn diamond_pairs(l: u32, t_max: i64, count: usize) -> Result<Vec<(LocMorphism, LocMorphism)>, CompareError> {
    let slab = LatticeSpacetime::slab(l, 0, t_max)?;
    let mut diamonds = Vec::new();
    for k in 1..=2 {
        for t in 0..=t_max - 2 * k {
            for x in 0..period(l) {
                let d = LatticeSpacetime::diamond(l, Site::new(t, x), k)?;
                diamonds.push(LocMorphism::inclusion(&d, &slab)?);
            }
        }
    }
    let mut pairs = Vec::new();
    for (i, f1) in diamonds.iter().enumerate() {
        for f2 in &diamonds[i + 1..] {
            if causally_disjoint(f1, f2)? {
                pairs.push((f1.clone(), f2.clone()));
            }
        }
    }
    let stride = pairs.len().div_ceil(count.max(1)).max(1);
    Ok(pairs.into_iter().step_by(stride).collect())
}
