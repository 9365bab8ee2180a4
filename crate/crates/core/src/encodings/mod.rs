//! Machine-built derivations for arithmetic inside the second-order calculi:
//! the predicate `Nn`, relativization, induction, least fixed points and the
//! translation of inductive definitions.

pub mod eq;
pub mod fixpoint;
pub mod idformula;
pub mod induction;
pub(crate) mod nd;
pub mod nn;
pub mod relativize;

pub use eq::EqAxiomSet;
pub use fixpoint::{fixpoint_kit, FixpointKit};
pub use idformula::{id_translate, FixedPoint, IdFormula};
pub use induction::{induction_derivation, nn_term_induction};
pub use nn::{nn, relativize};
pub use relativize::{relativize_derivation, relativized_sequent};
