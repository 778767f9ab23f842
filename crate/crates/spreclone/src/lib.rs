//! Signed preclones and signed relational clones on finite base sets.
//!
//! Operations over a finite set `A` carry a signum: one element of a
//! finite monoid `S` per argument. Relations come in `S`-indexed
//! families. The crate provides the preservation predicate connecting
//! the two sides, the bounded SPol/SInv operators, fixed-point closure
//! engines on both sides, a decision procedure for membership in a
//! generated preclone, and bounded lattice exploration on top.

pub mod closures;
pub mod codec;
pub mod error;
pub mod galois;
pub mod json;
pub mod lattice;
pub mod monoid;
pub mod ops;
pub mod rel;

pub use error::{Error, Result};
