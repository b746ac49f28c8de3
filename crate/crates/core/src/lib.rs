//! Exact invariants attached to CM tori and their reciprocity morphisms.
//!
//! Everything is exact integer or rational arithmetic except the handful of
//! real numbers in [`precise`], which carry an explicit decimal precision.

pub mod arith;
pub mod classical;
pub mod cmgroup;
pub mod error;
pub mod exactalg;
pub mod localinv;
pub mod precise;
pub mod reciprocity;

pub use error::{Error, ErrorKind, Result};
pub use exactalg::{IntegerMatrix, InvariantFactors};
pub use precise::Real;
