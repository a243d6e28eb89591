//! The three functors on region embeddings: pushforward of observables,
//! extension of solutions, and relabeling of initial data.

use num::One;

use crate::lattice::{is_cauchy_morphism, CauchyRow, LatticeError, LocMorphism, Site};
use crate::numeric::{QMatrix, Q};

use super::spaces::evolution_matrix;
use super::{
    data_space, observables_space, solutions_space, Field, KgError, PoissonMap,
};

/// `L(f)[φ] = [f_* φ]`.
pub fn observables_map(f: &LocMorphism, m0sq: &Q) -> Result<PoissonMap, KgError> {
    let src = observables_space(f.source(), m0sq)?;
    let tgt = observables_space(f.target(), m0sq)?;
    let columns = src
        .basis_sites()
        .iter()
        .map(|&b| tgt.coordinates(&Field::delta(f.target(), f.apply(b))?))
        .collect::<Result<Vec<_>, _>>()?;
    PoissonMap::new(src.space().clone(), tgt.space().clone(), QMatrix::from_columns(tgt.dim(), &columns))
}

/// Spatial relabeling `(φ, π)(x) ↦ (φ, π)(x + dx)` on full rows of period `p`.
fn shift_matrix(p: usize, dx: i64) -> QMatrix {
    let mut s = QMatrix::zeros(2 * p, 2 * p);
    for x in 0..p {
        let y = (x as i64 + dx).rem_euclid(p as i64) as usize;
        s.set(y, x, Q::one());
        s.set(p + y, p + x, Q::one());
    }
    s
}

/// `Sol(f)`: the unique solution on the target extending the pushed-forward one.
pub fn solutions_map(f: &LocMorphism, m0sq: &Q) -> Result<PoissonMap, KgError> {
    if !is_cauchy_morphism(f) {
        return Err(KgError::NotCauchy);
    }
    let src = solutions_space(f.source(), m0sq)?;
    let tgt = solutions_space(f.target(), m0sq)?;
    let p = f.source().period() as usize;
    let image_bottom = f.source().t_min() + f.shift().dt;
    let back = evolution_matrix(p, f.target().t_min() - image_bottom, m0sq);
    let matrix = &back * &shift_matrix(p, f.shift().dx);
    PoissonMap::new(src.space().clone(), tgt.space().clone(), matrix)
}

/// `Data(f|) : Data(Σ) → Data(f Σ)`, which requires `f Σ` to be a Cauchy row of the target.
pub fn data_map(f: &LocMorphism, sigma: &CauchyRow) -> Result<PoissonMap, KgError> {
    if sigma.parent() != f.source() {
        return Err(LatticeError::TargetMismatch.into());
    }
    let t = sigma.t0() + f.shift().dt;
    let image: Vec<Site> = sigma.sites().into_iter().map(|s| f.apply(s)).collect();
    let target_row = CauchyRow::new(f.target().clone(), t).map_err(|_| KgError::NotCauchy)?;
    let tgt_sites = target_row.sites();
    if tgt_sites.len() != image.len() || image.iter().any(|s| !tgt_sites.contains(s)) {
        return Err(KgError::NotCauchy);
    }
    let n = image.len();
    let mut matrix = QMatrix::zeros(2 * n, 2 * n);
    for (i, s) in image.iter().enumerate() {
        let j = tgt_sites.iter().position(|x| x == s).expect("image row");
        matrix.set(j, i, Q::one());
        matrix.set(n + j, n + i, Q::one());
    }
    PoissonMap::new(data_space(sigma), data_space(&target_row), matrix)
}

/// `L(f)`, `Sol(f)` and `Data(f|)` for an embedding of slabs.
#[derive(Debug, Clone)]
pub struct FunctorialMaps {
    pub observables: PoissonMap,
    pub solutions: PoissonMap,
    pub data: PoissonMap,
}

pub fn functorial_maps(f: &LocMorphism, sigma: &CauchyRow, m0sq: &Q) -> Result<FunctorialMaps, KgError> {
    Ok(FunctorialMaps {
        observables: observables_map(f, m0sq)?,
        solutions: solutions_map(f, m0sq)?,
        data: data_map(f, sigma)?,
    })
}
