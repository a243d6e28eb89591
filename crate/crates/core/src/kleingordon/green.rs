//! Retarded and advanced Green operators by leapfrog on the ambient cylinder.

use std::collections::BTreeMap;

use num::Zero;

use crate::lattice::{period, LatticeError, LatticeSpacetime, Site};
use crate::numeric::Q;

use super::{Field, KgError};

/// `(K u)(x) = u(x+1) + u(x−1) − m² u(x)`, the part of the stencil on the current row.
pub(super) fn k_row(row: &[Q], m0sq: &Q) -> Vec<Q> {
    let p = row.len();
    (0..p).map(|x| &row[(x + 1) % p] + &row[(x + p - 1) % p] - m0sq * &row[x]).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Backward,
}

/// Solves `P u = src` on full cylinder rows spanning `m`, with `u` vanishing on
/// every row at or before (forward) or at or after (backward) the source.
fn leapfrog(m: &LatticeSpacetime, src: &Field, m0sq: &Q, dir: Direction) -> Field {
    let l = m.circumference();
    let p = period(l) as usize;
    let support = src.support();
    let (Some(first), Some(last)) = (support.first(), support.last()) else {
        return Field::zero(m);
    };
    let src_row = |t: i64| -> Vec<Q> { (0..p as i64).map(|x| src.get(Site::new(t, x))).collect() };
    let mut rows: BTreeMap<i64, Vec<Q>> = BTreeMap::new();
    let zero = vec![Q::zero(); p];
    match dir {
        Direction::Forward => {
            let start = first.t;
            rows.insert(start - 1, zero.clone());
            rows.insert(start, zero);
            for t in start..m.t_max() {
                let k = k_row(&rows[&t], m0sq);
                let s = src_row(t);
                let next = (0..p).map(|x| &s[x] - &rows[&(t - 1)][x] + &k[x]).collect();
                rows.insert(t + 1, next);
            }
        }
        Direction::Backward => {
            let start = last.t;
            rows.insert(start + 1, zero.clone());
            rows.insert(start, zero);
            for t in (m.t_min() + 1..=start).rev() {
                let k = k_row(&rows[&t], m0sq);
                let s = src_row(t);
                let prev = (0..p).map(|x| &s[x] - &rows[&(t + 1)][x] + &k[x]).collect();
                rows.insert(t - 1, prev);
            }
        }
    }
    Field::from_fn(l, m.sites().iter().copied(), |s| {
        rows.get(&s.t).map_or_else(Q::zero, |r| r[s.x as usize].clone())
    })
}

fn check_source(m: &LatticeSpacetime, src: &Field) -> Result<(), KgError> {
    let interior = m.stencil_interior();
    match src.support().into_iter().find(|s| !interior.contains(s)) {
        Some(s) => Err(KgError::SourceTouchesBoundary(s)),
        None => Ok(()),
    }
}

/// `G⁺ src`, supported in the causal future of the source.
pub fn green_retarded(m: &LatticeSpacetime, src: &Field, m0sq: &Q) -> Result<Field, KgError> {
    check_source(m, src)?;
    Ok(leapfrog(m, src, m0sq, Direction::Forward))
}

/// `G⁻ src`, supported in the causal past of the source.
pub fn green_advanced(m: &LatticeSpacetime, src: &Field, m0sq: &Q) -> Result<Field, KgError> {
    check_source(m, src)?;
    Ok(leapfrog(m, src, m0sq, Direction::Backward))
}

/// `G = G⁺ − G⁻`.
pub fn causal_propagator(m: &LatticeSpacetime, src: &Field, m0sq: &Q) -> Result<Field, KgError> {
    check_source(m, src)?;
    Ok(propagator_unchecked(m, src, m0sq))
}

fn propagator_unchecked(m: &LatticeSpacetime, src: &Field, m0sq: &Q) -> Field {
    &leapfrog(m, src, m0sq, Direction::Forward) - &leapfrog(m, src, m0sq, Direction::Backward)
}

/// The causal propagator of a source anywhere in `m`.
///
/// Values on a causally convex region only depend on sites inside it, so
/// this is intrinsic to `m` even for sources on its boundary.
pub(crate) fn propagator_on(m: &LatticeSpacetime, src: &Field, m0sq: &Q) -> Result<Field, KgError> {
    if let Some(s) = src.support().into_iter().find(|s| !m.contains(*s)) {
        return Err(LatticeError::SiteNotInSpacetime(s).into());
    }
    Ok(propagator_unchecked(m, src, m0sq))
}
