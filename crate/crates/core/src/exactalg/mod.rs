//! Exact integer linear algebra: Smith and Hermite forms, lattice quotients
//! and saturation.

pub(crate) mod bigint_serde;
mod factors;
mod lattice;
mod matrix;
mod smith;

pub use factors::InvariantFactors;
pub use lattice::{
    hermite_normal_form, integer_kernel, lattice_quotient_invariants, rank, relative_quotient_invariants, saturate,
    solve_left,
};
pub use matrix::IntegerMatrix;
pub use smith::{smith_decomposition, smith_invariants, SmithDecomposition};
