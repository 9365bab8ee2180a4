//! Proof kernel, cut elimination, bounded proof search and a finite lattice
//! laboratory for (parameter-free second-order) intuitionistic sequent
//! calculi.

pub mod cut;
pub mod demo;
pub mod encodings;
pub mod error;
pub mod interpolate;
pub mod kernel;
pub mod lattice;
pub mod omega;
pub mod search;
pub mod semantics;
pub mod syntax;

pub use error::{Error, ParseError, Result};
