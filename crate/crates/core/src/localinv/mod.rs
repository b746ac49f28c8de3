//! Local invariants of tori: conductors, component groups, group cohomology of
//! lattices and the quasi-discriminant.

mod action;
mod cohomology;
mod conductor;
mod quasidisc;

pub use action::{
    block_diagonal, cyclotomic_companion, cyclotomic_polynomial, invariant_rank, matrix_order, ActionSpec,
    LatticeAction, DEFAULT_ACTION_CAP, MAX_MATRIX_ORDER,
};
pub use cohomology::{
    component_group_order, h1_cyclic, h1_general, h1_general_with_cap, h2_general, h2_general_with_cap, H1_ORDER_CAP,
    H2_ORDER_CAP,
};
pub use conductor::{
    artin_conductor, tame_conductor_check, ConductorReport, FiltrationSpec, RamificationFiltration, TameReport,
};
pub use quasidisc::{quasi_discriminant, QuasiDiscInputs, QuasiDiscriminant};
