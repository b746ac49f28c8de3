//! Reciprocity morphism on cocharacters: the lattice `L_μ`, its saturation and
//! the component group of the kernel, with named families and enumeration.

mod action;
mod enumerate;
mod families;
mod kernel;

pub use action::{cochar_action, cochar_left_action};
pub use enumerate::{enumerate_cm_data, EnumeratedDatum, MAX_ENUMERATION_DEGREE};
pub use families::{make_family, Family, MAX_CYCLIC_PRIME};
pub use kernel::{
    analyze_datum, kernel_component_group, kernel_from_lattice, reciprocity_vectors, CocharLattice, DatumReport,
    KernelReport,
};
