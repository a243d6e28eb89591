//! Shared fixtures for the criterion benches.

use aqft_fft::ccr::{CcrAlgebra, CcrElement};
use aqft_fft::kleingordon::{data_space, Field};
use aqft_fft::lattice::{CauchyRow, LatticeSpacetime, Shift, Site};
use aqft_fft::lbord::{BordObject, Bordism, Rows};

pub fn slab(l: u32, t0: i64, t1: i64) -> LatticeSpacetime {
    LatticeSpacetime::slab(l, t0, t1).expect("valid slab")
}

/// A point source in the middle of `m`.
pub fn centre_delta(m: &LatticeSpacetime) -> Field {
    let t = (m.t_min() + m.t_max()) / 2;
    Field::delta(m, Site::new(t, 0)).expect("interior site")
}

/// CCR algebra of Cauchy data on one row of circumference `l`.
pub fn data_algebra(l: u32) -> CcrAlgebra {
    CcrAlgebra::new(data_space(&CauchyRow::new(slab(l, 0, 2), 1).expect("row")))
}

/// `(e_{n-1} + ... + e_0)^degree` built with generators in increasing order,
/// so every product needs reordering.
pub fn reversed_power(alg: &CcrAlgebra, degree: usize) -> Vec<CcrElement> {
    let n = alg.dim();
    let sum = (0..n)
        .map(|a| alg.generator(a).expect("generator"))
        .try_fold(alg.zero(), |acc, g| acc.add(&g))
        .expect("same algebra");
    vec![sum; degree]
}

/// A height-`h` bordism between three-row slabs with the minimal collars.
pub fn straight_bordism(l: u32, h: i64) -> Bordism {
    let src = BordObject::slab(l, 0, 2, 1).expect("object");
    let n = Rows::new(0, h + 2);
    Bordism::new(src, src, n, src.rows(), src.rows(), Shift::IDENTITY, Shift::new(h, 0)).expect("bordism")
}
