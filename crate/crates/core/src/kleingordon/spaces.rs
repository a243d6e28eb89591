//! Observables `L(M)`, solutions `Sol(M)` and initial data `Data(Σ)`, with
//! the isomorphisms `G_M : L(M) → Sol(M)` and `res : Sol(M) → Data(Σ)`.

use num::{One, Zero};

use crate::lattice::{CauchyRow, LatticeError, LatticeSpacetime, Site, SiteSet};
use crate::numeric::{QMatrix, Q};

use super::green::k_row;
use super::{propagator_on, stencil_column, Field, KgError, PoissonMap, PoissonSpace};

/// `L(M) = C(M) / P C(M°)` with the form `τ_M([φ1],[φ2]) = Σ φ1 · G φ2`.
///
/// Ordering sites by descending time, `P δ_p` has leading site `p + (1,0)`, so
/// the image of `P` is spanned by an echelon family and the sites that are not
/// such leading sites give a basis of the quotient.
#[derive(Debug, Clone)]
pub struct Observables {
    m: LatticeSpacetime,
    m0sq: Q,
    interior: SiteSet,
    basis: Vec<Site>,
    space: PoissonSpace,
}

pub fn observables_space(m: &LatticeSpacetime, m0sq: &Q) -> Result<Observables, KgError> {
    let interior = m.stencil_interior();
    if interior.is_empty() {
        return Err(KgError::DegenerateRegion);
    }
    let basis: Vec<Site> =
        m.sites().iter().copied().filter(|s| !interior.contains(&Site::new(s.t - 1, s.x))).collect();
    let propagated = basis
        .iter()
        .map(|&b| propagator_on(m, &Field::delta(m, b)?, m0sq))
        .collect::<Result<Vec<_>, _>>()?;
    let n = basis.len();
    let mut form = QMatrix::zeros(n, n);
    for (j, g) in propagated.iter().enumerate() {
        for (i, &b) in basis.iter().enumerate() {
            form.set(i, j, g.get(b));
        }
    }
    let labels = basis.iter().map(|s| format!("[δ{s}]")).collect();
    let space = PoissonSpace::new(labels, form)?;
    Ok(Observables { m: m.clone(), m0sq: m0sq.clone(), interior, basis, space })
}

impl Observables {
    pub fn region(&self) -> &LatticeSpacetime {
        &self.m
    }

    pub fn space(&self) -> &PoissonSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Sites whose delta classes form the basis.
    pub fn basis_sites(&self) -> &[Site] {
        &self.basis
    }

    /// Coordinates of `[φ]`, reducing by `P δ_p` from the top row down.
    pub fn coordinates(&self, phi: &Field) -> Result<Vec<Q>, KgError> {
        if let Some(s) = phi.support().into_iter().find(|s| !self.m.contains(*s)) {
            return Err(LatticeError::SiteNotInSpacetime(s).into());
        }
        let l = self.m.circumference();
        let mut work = phi.restrict(self.m.sites());
        for &s in self.m.sites().iter().rev() {
            let p = Site::new(s.t - 1, s.x);
            if !self.interior.contains(&p) {
                continue;
            }
            let c = work.get(s);
            if c.is_zero() {
                continue;
            }
            for (site, coeff) in stencil_column(p, l, &self.m0sq) {
                let v = work.get(site) - &c * coeff;
                work.set(site, v);
            }
        }
        Ok(self.basis.iter().map(|&b| work.get(b)).collect())
    }

    /// The quotient map `C(M) → L(M)` in the site order of the region.
    pub fn quotient_matrix(&self) -> QMatrix {
        let columns: Vec<Vec<Q>> = self
            .m
            .sites()
            .iter()
            .map(|&s| self.coordinates(&Field::delta(&self.m, s).expect("site of region")).expect("in region"))
            .collect();
        QMatrix::from_columns(self.dim(), &columns)
    }

    /// The representative `Σ c_i δ_{b_i}`.
    pub fn representative(&self, coords: &[Q]) -> Field {
        let mut f = Field::zero(&self.m);
        for (b, c) in self.basis.iter().zip(coords) {
            f.set(*b, c.clone());
        }
        f
    }

    /// `τ_M` evaluated directly on representatives.
    pub fn pairing(&self, phi1: &Field, phi2: &Field) -> Result<Q, KgError> {
        Ok(phi1.pairing(&propagator_on(&self.m, phi2, &self.m0sq)?))
    }
}

/// `Data(Σ)` form in `(φ, π)` coordinates: `τ_Σ((φ1,π1),(φ2,π2)) = Σ_x (φ2 π1 − φ1 π2)`.
///
/// This sign makes `res` form-preserving for `τ_M = Σ φ1 G φ2` with `G = G⁺ − G⁻`.
pub fn data_form(n: usize) -> QMatrix {
    let mut w = QMatrix::zeros(2 * n, 2 * n);
    for x in 0..n {
        w.set(x, n + x, -Q::one());
        w.set(n + x, x, Q::one());
    }
    w
}

/// Initial data on a Cauchy row: values and forward differences `π = Φ(t0+1) − Φ(t0)`.
pub fn data_space(sigma: &CauchyRow) -> PoissonSpace {
    let sites = sigma.sites();
    let labels = sites
        .iter()
        .map(|s| format!("φ{s}"))
        .chain(sites.iter().map(|s| format!("π{s}")))
        .collect();
    PoissonSpace::new(labels, data_form(sites.len())).expect("antisymmetric form")
}

/// Evolves data `(φ, π)` on full rows by `steps` rows (negative steps go back).
pub fn evolve_data(phi: &[Q], pi: &[Q], steps: i64, m0sq: &Q) -> (Vec<Q>, Vec<Q>) {
    let mut lower: Vec<Q> = phi.to_vec();
    let mut upper: Vec<Q> = phi.iter().zip(pi).map(|(a, b)| a + b).collect();
    for _ in 0..steps.max(0) {
        let k = k_row(&upper, m0sq);
        let next = k.iter().zip(&lower).map(|(a, b)| a - b).collect();
        lower = std::mem::replace(&mut upper, next);
    }
    for _ in 0..(-steps).max(0) {
        let k = k_row(&lower, m0sq);
        let prev = k.iter().zip(&upper).map(|(a, b)| a - b).collect();
        upper = std::mem::replace(&mut lower, prev);
    }
    let pi = upper.iter().zip(&lower).map(|(a, b)| a - b).collect();
    (lower, pi)
}

/// The `2P × 2P` matrix of `evolve_data`.
pub(super) fn evolution_matrix(p: usize, steps: i64, m0sq: &Q) -> QMatrix {
    let columns: Vec<Vec<Q>> = (0..2 * p)
        .map(|j| {
            let e = unit_vector(2 * p, j);
            let (phi, pi) = evolve_data(&e[..p], &e[p..], steps, m0sq);
            phi.into_iter().chain(pi).collect()
        })
        .collect();
    QMatrix::from_columns(2 * p, &columns)
}

/// Solutions of `P Φ = 0` on a slab, coordinatized by their data on the bottom row.
#[derive(Debug, Clone)]
pub struct Solutions {
    m: LatticeSpacetime,
    m0sq: Q,
    space: PoissonSpace,
}

pub fn solutions_space(m: &LatticeSpacetime, m0sq: &Q) -> Result<Solutions, KgError> {
    if !m.is_slab() {
        return Err(KgError::NotASlab);
    }
    let t0 = m.t_min();
    let p = m.period() as usize;
    let labels = (0..p)
        .map(|x| format!("φ({t0}, {x})"))
        .chain((0..p).map(|x| format!("π({t0}, {x})")))
        .collect::<Vec<_>>();
    let mut sol = Solutions {
        m: m.clone(),
        m0sq: m0sq.clone(),
        space: PoissonSpace::new(labels.clone(), QMatrix::zeros(2 * p, 2 * p))?,
    };
    let basis: Vec<Field> = (0..2 * p).map(|j| sol.solution(&unit_vector(2 * p, j))).collect();
    let mut form = QMatrix::zeros(2 * p, 2 * p);
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            form.set(i, j, sol.current(a, b, t0));
        }
    }
    sol.space = PoissonSpace::new(labels, form)?;
    Ok(sol)
}

pub(super) fn unit_vector(n: usize, j: usize) -> Vec<Q> {
    (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()
}

impl Solutions {
    pub fn region(&self) -> &LatticeSpacetime {
        &self.m
    }

    pub fn space(&self) -> &PoissonSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn p(&self) -> usize {
        self.m.period() as usize
    }

    /// The solution with the given bottom-row data.
    pub fn solution(&self, coords: &[Q]) -> Field {
        let p = self.p();
        let t0 = self.m.t_min();
        let mut f = Field::zero(&self.m);
        for t in t0..=self.m.t_max() {
            let (row, _) = evolve_data(&coords[..p], &coords[p..], t - t0, &self.m0sq);
            for (x, v) in row.into_iter().enumerate() {
                f.set(Site::new(t, x as i64), v);
            }
        }
        f
    }

    /// Bottom-row data of a field on the slab.
    pub fn coordinates(&self, phi: &Field) -> Vec<Q> {
        let t0 = self.m.t_min();
        let p = self.p() as i64;
        let lower: Vec<Q> = (0..p).map(|x| phi.get(Site::new(t0, x))).collect();
        let pi = (0..p).map(|x| phi.get(Site::new(t0 + 1, x)) - &lower[x as usize]);
        lower.iter().cloned().chain(pi).collect()
    }

    pub fn is_solution(&self, phi: &Field) -> bool {
        super::apply_p(&self.m, phi, &self.m0sq).is_zero()
    }

    /// `σ_M(Φ1, Φ2) = Σ_x (Φ2(t,x) Φ1(t+1,x) − Φ1(t,x) Φ2(t+1,x))` on the row pair at `t`.
    pub fn current(&self, a: &Field, b: &Field, t: i64) -> Q {
        (0..self.m.period()).fold(Q::zero(), |acc, x| {
            let (lo, hi) = (Site::new(t, x), Site::new(t + 1, x));
            acc + b.get(lo) * a.get(hi) - a.get(lo) * b.get(hi)
        })
    }

    /// `G_M : L(M) → Sol(M)`, `[φ] ↦ G φ`.
    pub fn propagator_map(&self, obs: &Observables) -> Result<PoissonMap, KgError> {
        if obs.region() != &self.m {
            return Err(LatticeError::TargetMismatch.into());
        }
        let columns = obs
            .basis_sites()
            .iter()
            .map(|&b| Ok(self.coordinates(&propagator_on(&self.m, &Field::delta(&self.m, b)?, &self.m0sq)?)))
            .collect::<Result<Vec<_>, KgError>>()?;
        PoissonMap::new(obs.space().clone(), self.space.clone(), QMatrix::from_columns(self.dim(), &columns))
    }
}

/// `res_{(M,Σ)} : Sol(M) → Data(Σ)`, the data of a solution on the row pair at `Σ`.
pub fn res_map(sol: &Solutions, sigma: &CauchyRow) -> Result<PoissonMap, KgError> {
    if sigma.parent() != sol.region() {
        return Err(LatticeError::TargetMismatch.into());
    }
    let steps = sigma.t0() - sol.region().t_min();
    let matrix = evolution_matrix(sol.p(), steps, &sol.m0sq);
    PoissonMap::new(sol.space.clone(), data_space(sigma), matrix)
}

/// The three Poisson spaces of a slab and the isomorphisms between them.
#[derive(Debug, Clone)]
pub struct IsoChain {
    pub observables: Observables,
    pub solutions: Solutions,
    pub data: PoissonSpace,
    pub g: PoissonMap,
    pub res: PoissonMap,
}

impl IsoChain {
    /// `ζ = res ∘ G_M : L(M) → Data(Σ)`.
    pub fn composite(&self) -> PoissonMap {
        self.res.after(&self.g).expect("consecutive maps")
    }
}

pub fn iso_chain(m: &LatticeSpacetime, sigma: &CauchyRow, m0sq: &Q) -> Result<IsoChain, KgError> {
    let observables = observables_space(m, m0sq)?;
    let solutions = solutions_space(m, m0sq)?;
    let g = solutions.propagator_map(&observables)?;
    let res = res_map(&solutions, sigma)?;
    if !g.is_isomorphism() || !res.is_isomorphism() {
        return Err(KgError::NotInvertible);
    }
    Ok(IsoChain { observables, solutions, data: res.tgt().clone(), g, res })
}

