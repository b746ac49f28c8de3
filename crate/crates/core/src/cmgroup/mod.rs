//! Subgroups of `C_g = (Z/2)^g ⋊ S_g` acting on `J = {±1, …, ±g}`, CM types,
//! the sign/permutation extension and reflex data.

mod cmtype;
mod dodson;
mod group;
mod perm;
mod reflex;

pub use cmtype::CmType;
pub use dodson::{cocycle_splitting, dodson_decompose, DodsonData, MAX_SPLITTING_DEGREE};
pub use group::{
    hyperoctahedral_generators, CmGaloisGroup, CmValidation, SignedPermGroup, DEFAULT_CLOSURE_CAP, MAX_CLOSURE_DEGREE,
};
pub use perm::{SignVector, SignedPermutation};
pub use reflex::{is_primitive, normalize_cm_type, reflex, NormalizedDatum, ReflexData};
