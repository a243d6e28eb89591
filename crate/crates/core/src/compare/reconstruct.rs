use crate::ccr::{CcrAlgebra, CcrMorphism};
use crate::lattice::{is_cauchy_morphism, LatticeSpacetime, LocMorphism, Shift};
use crate::lbord::{BordObject, Bordism, Rows};

use super::{invert, then, Aqft, CompareError, Fft};

/// The AQFT on slabs and Cauchy morphisms recovered from a time-slice FFT.
///
/// The colimit of `F(M, Σ)` over the Cauchy rows of `M` is represented by the
/// earliest row; `ι_Σ : F(M, Σ) → A(M)` inverts `F` on the bordism that
/// connects the earliest row to `Σ` inside `M`.
#[derive(Debug)]
pub struct Reconstructed<F> {
    f: F,
}

/// Reconstructs `A` from `f`, checking that `f` is invertible on the
/// connecting bordisms of a three-row slab.
pub fn reconstruct_aqft<F: Fft>(f: F) -> Result<Reconstructed<F>, CompareError> {
    let r = Reconstructed { f };
    let probe = BordObject::slab(r.f.circumference(), 0, 2, 1)?;
    r.cocone(&probe)?;
    Ok(r)
}

impl<F: Fft> Reconstructed<F> {
    pub fn fft(&self) -> &F {
        &self.f
    }

    /// `(M, Σ_min)`.
    pub fn earliest(&self, m: &LatticeSpacetime) -> Result<BordObject, CompareError> {
        let rows = Rows::of(m).map_err(|_| CompareError::NotASlab)?;
        Ok(BordObject::slab(m.circumference(), rows.lo, rows.hi, rows.lo)?)
    }

    /// `(M, Σ_min) ⇸ (M, Σ)` with `N = V0 = V1 = M` and identity embeddings.
    pub fn connecting(&self, o: &BordObject) -> Result<Bordism, CompareError> {
        let m = o.rows();
        let first = self.earliest(&o.spacetime())?;
        Ok(Bordism::new(first, *o, m, m, m, Shift::IDENTITY, Shift::IDENTITY)?)
    }

    /// `ι_Σ : F(M, Σ) → A(M)`; these are also the components of the natural
    /// isomorphism `F ≅ F_A`.
    pub fn cocone(&self, o: &BordObject) -> Result<CcrMorphism, CompareError> {
        let b = self.connecting(o)?;
        invert(&self.f.morphism(&b)?, || format!("F on the bordism from row {} to row {}", b.row0(), b.row1()))
    }

    /// `A(g) = ι_{gΣ} ∘ F(M', g, id) ∘ ι_Σ⁻¹`, computed through the row `Σ` of the source.
    pub fn morphism_via(&self, g: &LocMorphism, sigma: i64) -> Result<CcrMorphism, CompareError> {
        if !is_cauchy_morphism(g) {
            return Err(CompareError::NotCauchy);
        }
        let (src_rows, tgt_rows) = (
            Rows::of(g.source()).map_err(|_| CompareError::NotASlab)?,
            Rows::of(g.target()).map_err(|_| CompareError::NotASlab)?,
        );
        let l = g.source().circumference();
        let o = BordObject::slab(l, src_rows.lo, src_rows.hi, sigma)?;
        let o2 = BordObject::slab(l, tgt_rows.lo, tgt_rows.hi, sigma + g.shift().dt)?;
        let companion = Bordism::new(o, o2, tgt_rows, src_rows, tgt_rows, g.shift(), Shift::IDENTITY)?;
        let into = invert(&self.cocone(&o)?, || "cocone map".into())?;
        then(&then(&into, &self.f.morphism(&companion)?)?, &self.cocone(&o2)?)
    }
}

impl<F: Fft> Aqft for Reconstructed<F> {
    fn circumference(&self) -> u32 {
        self.f.circumference()
    }

    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError> {
        self.f.algebra(&self.earliest(m)?)
    }

    fn morphism(&self, g: &LocMorphism) -> Result<CcrMorphism, CompareError> {
        self.morphism_via(g, g.source().t_min())
    }
}
