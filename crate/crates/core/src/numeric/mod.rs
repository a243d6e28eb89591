//! Exact scalars and linear algebra.

pub mod matrix;
pub mod rational;

pub use matrix::QMatrix;
pub use rational::{
    cq, cq_real, fmt_cq, fmt_q, imag_unit, parse_cq, parse_q, q, qf, Cq, Fraction,
    ParseScalarError, Q,
};
