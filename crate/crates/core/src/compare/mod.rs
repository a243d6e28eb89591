//! The Klein-Gordon field as an AQFT and as an FFT on lattice bordisms, the
//! functor from time-slice AQFTs to FFTs, and reconstruction of an AQFT from
//! an FFT by evaluating on the earliest Cauchy row.
//!
//! Algebra maps are compared on generators: every algebra here is a CCR
//! algebra, generated in degree one, so two unital algebra maps agree iff
//! their generator matrices do.

mod aqft;
mod checks;
mod fft;
mod reconstruct;
mod report;

#[cfg(test)]
mod tests;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ccr::{CcrAlgebra, CcrError, CcrMorphism};
use crate::kleingordon::KgError;
use crate::lattice::{LatticeError, LatticeSpacetime, LocMorphism};
use crate::lbord::{BordObject, Bordism, LBordError};
use crate::numeric::{Fraction, Q};

pub use aqft::{check_einstein_causality, check_time_slice, diamond_pairs, KgAqft, SignTwisted};
pub use checks::{
    check_aqft_axioms, check_class_independence, check_faithfulness_probe, check_fft_functoriality,
    check_non_fullness, check_one_dimensional_roundtrip, check_reconstruction, check_scalar_comparison, check_time_translation_witness,
    random_bordisms, random_cauchy_morphisms,
};
pub use fft::{fft_from_aqft, AqftToFft, KgFft};
pub use reconstruct::{reconstruct_aqft, Reconstructed};
pub use report::{CheckRecord, Report, Status};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("time-slice axiom fails: {0}")]
    TimeSliceViolation(String),
    #[error("morphism is not Cauchy")]
    NotCauchy,
    #[error("region is not a slab of full rows")]
    NotASlab,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Ccr(#[from] CcrError),
    #[error(transparent)]
    LBord(#[from] LBordError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A functor from regions and embeddings to CCR algebras.
pub trait Aqft {
    fn circumference(&self) -> u32;
    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError>;
    fn morphism(&self, f: &LocMorphism) -> Result<CcrMorphism, CompareError>;
}

/// A functor from the homotopy category of lattice bordisms to CCR algebras,
/// evaluated on representatives.
pub trait Fft {
    fn circumference(&self) -> u32;
    fn algebra(&self, o: &BordObject) -> Result<CcrAlgebra, CompareError>;
    fn morphism(&self, b: &Bordism) -> Result<CcrMorphism, CompareError>;
}

/// Lattice bounds and sampling parameters shared by the comparison suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "T_max")]
    pub t_max: i64,
    pub mass_squared: Fraction,
    pub seed: u64,
    pub max_degree: usize,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self { l: 8, t_max: 12, mass_squared: Fraction(Q::from_integer(0.into())), seed: 0, max_degree: 3 }
    }
}

impl CompareConfig {
    pub fn from_toml(s: &str) -> Result<Self, CompareError> {
        let c: Self = toml::from_str(s).map_err(|e| CompareError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(s: &str) -> Result<Self, CompareError> {
        let c: Self = serde_json::from_str(s).map_err(|e| CompareError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// `L = 0` (one spatial point) or `L ≥ 3`, and `T_max ≥ 4`.
    pub fn validate(&self) -> Result<(), CompareError> {
        if self.l != 0 && self.l < 3 {
            return Err(CompareError::Config(format!("L = {} must be 0 or at least 3", self.l)));
        }
        if self.t_max < 4 {
            return Err(CompareError::Config(format!("T_max = {} must be at least 4", self.t_max)));
        }
        Ok(())
    }

    pub fn m0sq(&self) -> &Q {
        &self.mass_squared.0
    }

    /// A string identifying the lattice and mass, used in report keys.
    pub fn key(&self) -> String {
        format!("L={},T_max={},m2={}", self.l, self.t_max, self.mass_squared)
    }
}

/// `A(f)⁻¹`, reporting a non-invertible image as a time-slice failure.
pub(crate) fn invert(f: &CcrMorphism, what: impl FnOnce() -> String) -> Result<CcrMorphism, CompareError> {
    if !f.map().is_isomorphism() {
        return Err(CompareError::TimeSliceViolation(what()));
    }
    Ok(f.inverse()?)
}

/// `g ∘ f`.
pub(crate) fn then(f: &CcrMorphism, g: &CcrMorphism) -> Result<CcrMorphism, CompareError> {
    Ok(g.after(f)?)
}
