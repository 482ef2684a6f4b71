//! imlkit: finite-model machinery for a family of intuitionistic modal
//! logics over birelational frames — parsing, model checking under three
//! diamond semantics, frame-condition predicates, model constructions,
//! Hilbert proof checking, filtration, and bounded countermodel search.

pub mod decide;
mod error;
pub mod filtration;
pub mod formula;
pub mod proofsys;
pub mod semantics;
pub mod structures;
pub mod transform;

pub use error::Error;
pub use formula::{parse, Formula, FormulaSet};
pub use semantics::SemanticsVariant;
pub use structures::{Frame, FrameClassSpec, FrameProperty, Model, Relation};
