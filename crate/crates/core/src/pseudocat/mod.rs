//! Finite groupoids, spans, and a table-driven pseudo-category engine.
//!
//! Every law is checked exhaustively on finite tables. The two constructions
//! `iota` (category to pseudo-category via commuting squares) and `tau`
//! (horizontals modulo globular 2-cells) are provided together with their
//! adjunction data.

mod adjunction;
mod category;
mod construct;
mod functor;
pub mod generators;
pub mod json;
mod pseudo;


use thiserror::Error;

pub use adjunction::{check_adjunction, count_pseudofunctors_into_iota, enumerate_functors, unit, Unit};
pub use category::{fiber_product, FiberProduct, FiniteCategory, FiniteGroupoid, GroupoidFunctor};
pub use construct::{companion_identities_hold, find_companion, iota, tau, Companion, Iota, Square, Truncation};
pub use functor::{
    check_pseudofunctor, check_transformation, iota_functor, iota_transformation, Functor, PseudoFunctor,
    Transformation,
};
pub use pseudo::{
    category_law_witness, check_coherence, AdjunctionReport, CoherenceReport, LawCheck, LawReport, PseudoCat,
    Status,
};

pub(crate) use construct::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PseudoCatError {
    #[error("structural validation failed: {0}")]
    Structure(String),
    #[error("not well defined: {0}")]
    NotWellDefined(String),
    #[error("no companion for vertical morphism {0}")]
    NoCompanion(usize),
}
