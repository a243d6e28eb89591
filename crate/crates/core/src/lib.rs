//! Exact finite models for comparing algebraic and functorial quantum field theory.
//!
//! The crate provides a pseudo-category engine with companions and the
//! homotopy-category adjunction, a lattice model of globally hyperbolic
//! Lorentzian bordisms on the cylinder `Z x Z_L`, the free Klein-Gordon field
//! with exact Green operators and Poisson spaces, CCR quantization by normal
//! ordering, and the comparison between the resulting AQFT and FFT.

pub mod ccr;
pub mod compare;
pub mod kleingordon;
pub mod lattice;
pub mod lbord;
pub mod numeric;
pub mod pseudocat;
pub mod suites;

pub use numeric::{Cq, Fraction, QMatrix, Q};
