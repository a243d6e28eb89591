use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::ccr::{CcrAlgebra, CcrMorphism};
use crate::kleingordon::{data_map, data_space, res_map, solutions_space, Solutions};
use crate::lattice::{CauchyRow, LatticeSpacetime, LocMorphism};
use crate::lbord::{BordObject, Bordism, Rows};
use crate::numeric::Q;

use super::{invert, then, Aqft, CompareError, Fft};

impl<T: Fft + ?Sized> Fft for &T {
    fn circumference(&self) -> u32 {
        (**self).circumference()
    }
    fn algebra(&self, o: &BordObject) -> Result<CcrAlgebra, CompareError> {
        (**self).algebra(o)
    }
    fn morphism(&self, b: &Bordism) -> Result<CcrMorphism, CompareError> {
        (**self).morphism(b)
    }
}

/// The collar embeddings `i0 : V0 → N`, `i1 : V1 → N` and inclusions `Vk ⊆ Mk`.
pub(crate) struct Legs {
    pub inc0: LocMorphism,
    pub i0: LocMorphism,
    pub i1: LocMorphism,
    pub inc1: LocMorphism,
}

pub(crate) fn legs(b: &Bordism) -> Result<Legs, CompareError> {
    let l = b.circumference();
    let (v0, v1) = (b.v0().spacetime(l)?, b.v1().spacetime(l)?);
    let n = b.spacetime();
    let inc0 = LocMorphism::inclusion(&v0, &b.src().spacetime())?;
    let inc1 = LocMorphism::inclusion(&v1, &b.tgt().spacetime())?;
    Ok(Legs { inc0, i0: LocMorphism::new(v0, n.clone(), b.i0())?, i1: LocMorphism::new(v1, n, b.i1())?, inc1 })
}

/// `F_KG(M, Σ) = CCR(Data(Σ))`; a bordism acts by pushing data into `N`,
/// solving through `N` and reading data off at the outgoing surface.
#[derive(Debug)]
pub struct KgFft {
    l: u32,
    m0sq: Q,
    algebras: Mutex<BTreeMap<BordObject, CcrAlgebra>>,
    solutions: Mutex<BTreeMap<Rows, Solutions>>,
}

impl KgFft {
    pub fn new(l: u32, m0sq: Q) -> Self {
        Self { l, m0sq, algebras: Mutex::new(BTreeMap::new()), solutions: Mutex::new(BTreeMap::new()) }
    }

    pub fn m0sq(&self) -> &Q {
        &self.m0sq
    }

    fn solutions(&self, n: Rows) -> Result<Solutions, CompareError> {
        if let Some(hit) = self.solutions.lock().expect("cache lock").get(&n) {
            return Ok(hit.clone());
        }
        let sol = solutions_space(&n.spacetime(self.l)?, &self.m0sq)?;
        self.solutions.lock().expect("cache lock").insert(n, sol.clone());
        Ok(sol)
    }
}

impl Fft for KgFft {
    fn circumference(&self) -> u32 {
        self.l
    }

    fn algebra(&self, o: &BordObject) -> Result<CcrAlgebra, CompareError> {
        let mut cache = self.algebras.lock().expect("cache lock");
        Ok(cache.entry(*o).or_insert_with(|| CcrAlgebra::new(data_space(&o.cauchy_row()))).clone())
    }

    /// `Data(i1|)⁻¹ ∘ res_{i1 Σ1} ∘ res_{i0 Σ0}⁻¹ ∘ Data(i0|)`.
    fn morphism(&self, b: &Bordism) -> Result<CcrMorphism, CompareError> {
        let legs = legs(b)?;
        let n = b.spacetime();
        let sol = self.solutions(b.n())?;
        let d0 = data_map(&legs.i0, &CauchyRow::new(legs.i0.source().clone(), b.src().sigma())?)?;
        let d1 = data_map(&legs.i1, &CauchyRow::new(legs.i1.source().clone(), b.tgt().sigma())?)?;
        let r0 = res_map(&sol, &CauchyRow::new(n.clone(), b.row0())?)?;
        let r1 = res_map(&sol, &CauchyRow::new(n, b.row1())?)?;
        let map = d1.inverse()?.after(&r1.after(&r0.inverse()?.after(&d0)?)?)?;
        Ok(CcrMorphism::between(map, &self.algebra(&b.src())?, &self.algebra(&b.tgt())?)?)
    }
}

/// `F_A`: `F_A(M, Σ) = A(M)` and
/// `F_A([N, i0, i1]) = A(V1 ⊆ M1) ∘ A(i1)⁻¹ ∘ A(i0) ∘ A(V0 ⊆ M0)⁻¹`.
#[derive(Debug)]
pub struct AqftToFft<A> {
    a: A,
}

impl<A: Aqft> AqftToFft<A> {
    pub fn aqft(&self) -> &A {
        &self.a
    }
}

/// Builds `F_A`, first checking that `A` inverts the Cauchy inclusions of a
/// three-row slab into the four-row slabs above and below it.
pub fn fft_from_aqft<A: Aqft>(a: A) -> Result<AqftToFft<A>, CompareError> {
    let l = a.circumference();
    let thin = LatticeSpacetime::slab(l, 0, 2)?;
    for (lo, hi) in [(0, 3), (-1, 2)] {
        let f = LocMorphism::inclusion(&thin, &LatticeSpacetime::slab(l, lo, hi)?)?;
        invert(&a.morphism(&f)?, || format!("inclusion of [0,2] into [{lo},{hi}] is not invertible"))?;
    }
    Ok(AqftToFft { a })
}

impl<A: Aqft> Fft for AqftToFft<A> {
    fn circumference(&self) -> u32 {
        self.a.circumference()
    }

    fn algebra(&self, o: &BordObject) -> Result<CcrAlgebra, CompareError> {
        self.a.algebra(&o.spacetime())
    }

    fn morphism(&self, b: &Bordism) -> Result<CcrMorphism, CompareError> {
        let legs = legs(b)?;
        let inc0 = self.a.morphism(&legs.inc0)?;
        let i1 = self.a.morphism(&legs.i1)?;
        let back0 = invert(&inc0, || format!("A(V0 ⊆ M0) for V0 = {}", b.v0()))?;
        let back1 = invert(&i1, || format!("A(i1) for V1 = {}", b.v1()))?;
        let forward = then(&back0, &self.a.morphism(&legs.i0)?)?;
        then(&then(&forward, &back1)?, &self.a.morphism(&legs.inc1)?)
    }
}
