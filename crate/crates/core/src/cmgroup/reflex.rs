//! Reflex data, primitivity and normalization of CM types.

use serde::Serialize;

use super::cmtype::CmType;
use super::dodson::dodson_decompose;
use super::group::CmGaloisGroup;
use super::perm::{point_index, SignVector, SignedPermutation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexData {
    /// `Fh' = {α : Σ̃α = Σ̃}`, sorted.
    pub reflex_subgroup: Vec<SignedPermutation>,
    /// `[E' : Q] = [Fg : Fh']`.
    pub reflex_degree: usize,
    pub v: u32,
    pub g0_order: usize,
    /// `|Fg_Σ|` computed from the section after normalizing `Σ`.
    pub fg_sigma_order: usize,
}

/// `Σ̃α = Σ̃` holds exactly when `α` maps the set `Σ` onto itself, since
/// `Σ̃α = {y : act(1, y) ∈ Σ.α}`.
fn set_stabilizer(group: &CmGaloisGroup, cm_type: &CmType) -> Vec<SignedPermutation> {
    group
        .elements()
        .iter()
        .filter(|x| cm_type.points().iter().all(|&p| cm_type.contains(x.apply(p))))
        .cloned()
        .collect()
}

fn check_degrees(group: &CmGaloisGroup, cm_type: &CmType) -> Result<()> {
    if group.g() != cm_type.g() {
        return Err(Error::Dimension(format!(
            "CM type on {} points paired with a group acting on {}",
            2 * cm_type.g(),
            2 * group.g()
        )));
    }
    Ok(())
}

/// Reflex subgroup and degree, cross-checked against `2g' = 2^v [Fg₀ : Fg_Σ]`.
pub fn reflex(group: &CmGaloisGroup, cm_type: &CmType) -> Result<ReflexData> {
    check_degrees(group, cm_type)?;
    let stab = set_stabilizer(group, cm_type);
    let reflex_degree = group.order() / stab.len();

    let normalized = normalize_cm_type(group, cm_type);
    let data = dodson_decompose(&normalized.group)?;
    let fg_sigma_order = data.fg_sigma().len();
    let via_section = (1usize << data.v) * data.g0_order() / fg_sigma_order;
    if data.g0_order() % fg_sigma_order != 0 || via_section != reflex_degree {
        return Err(Error::InvariantViolation(format!(
            "reflex degree {reflex_degree} differs from 2^v·[Fg0:Fg_Sigma] = {via_section}"
        )));
    }
    Ok(ReflexData { reflex_subgroup: stab, reflex_degree, v: data.v, g0_order: data.g0_order(), fg_sigma_order })
}

/// A CM type is primitive when `{α : αΣ̃ = Σ̃}` is just the point stabilizer
/// `Fh` of `1`.
///
/// `αΣ̃ = {y : act(j, y) ∈ Σ}` with `j = act(1, α⁻¹)`, so the left stabilizer is
/// governed by the points `j` that no element of the group tells apart from `1`.
pub fn is_primitive(group: &CmGaloisGroup, cm_type: &CmType) -> Result<bool> {
    check_degrees(group, cm_type)?;
    let g = group.g();
    let mask = cm_type.mask();
    let mut alike = vec![true; 2 * g];
    for y in group.elements() {
        let one_in = mask[point_index(y.apply(1), g)];
        for (idx, slot) in alike.iter_mut().enumerate() {
            if *slot {
                let p = if idx < g { idx as i32 + 1 } else { -((idx - g) as i32 + 1) };
                if mask[point_index(y.apply(p), g)] != one_in {
                    *slot = false;
                }
            }
        }
    }
    Ok(alike.iter().filter(|&&b| b).count() == 1)
}

#[derive(Clone, Debug)]
pub struct NormalizedDatum {
    pub group: CmGaloisGroup,
    /// Coordinates flipped to carry the input type onto `{1, …, g}`.
    pub flip: SignVector,
    pub cm_type: CmType,
}

/// Conjugates by the sign change taking `Σ` to `{1, …, g}`.
pub fn normalize_cm_type(group: &CmGaloisGroup, cm_type: &CmType) -> NormalizedDatum {
    let b = cm_type.flip_vector();
    NormalizedDatum {
        group: group.conjugate_by(&SignedPermutation::flip(group.g(), b)),
        flip: b,
        cm_type: CmType::standard(group.g()),
    }
}
