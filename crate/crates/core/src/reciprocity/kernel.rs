//! The cocharacter lattice `X_*(GU_E) = Zμ ⊕ ⊕ Ze_i`, the image lattice `L_μ`
//! of the reciprocity morphism and the component group `L'_μ / L_μ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cmgroup::{is_primitive, normalize_cm_type, reflex, CmGaloisGroup, CmType, SignedPermutation};
use crate::error::{Error, Result};
use crate::exactalg::{self, bigint_serde, IntegerMatrix, InvariantFactors};

/// Generators of `L_μ` written in the basis `(μ, e_1, …, e_g)`, one row per
/// reflex coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharLattice {
    pub g: usize,
    pub basis_labels: Vec<String>,
    pub generators: IntegerMatrix,
}

impl CocharLattice {
    pub fn reflex_degree(&self) -> usize {
        self.generators.rows()
    }
}

pub(crate) fn basis_labels(g: usize) -> Vec<String> {
    std::iter::once("mu".to_string()).chain((1..=g).map(|i| format!("e{i}"))).collect()
}

/// Image set `β(Σ)` of a normalized CM type as a sorted point list.
fn image_of_standard(beta: &SignedPermutation) -> Vec<i32> {
    let mut pts: Vec<i32> = (1..=beta.degree() as i32).map(|i| beta.apply(i)).collect();
    pts.sort_unstable();
    pts
}

/// Row `μ - Σ_{k : -k ∈ β(Σ)} e_k` after checking `n_k + n_{-k} = 1`.
fn cochar_row(g: usize, image: &[i32]) -> Result<Vec<BigInt>> {
    let mut hits = vec![0u8; g];
    let mut row = vec![BigInt::from(0); g + 1];
    row[0] = BigInt::from(1);
    for &p in image {
        let k = p.unsigned_abs() as usize;
        hits[k - 1] += 1;
        if p < 0 {
            row[k] = BigInt::from(-1);
        }
    }
    if hits.iter().any(|&h| h != 1) {
        return Err(Error::InvariantViolation(format!("coset vector {image:?} does not lie in X_*(GU_E)")));
    }
    Ok(row)
}

/// Computes `v_β = Σ_{i ∈ Σ} [α_{act(i, β)}]` for each right coset `Fh'β`.
///
/// The CM type is first normalized to `{1, …, g}` by a sign change, so rows are
/// expressed for the conjugated group; the resulting lattice invariants do not
/// depend on that step. Rows are sorted.
pub fn reciprocity_vectors(group: &CmGaloisGroup, cm_type: &CmType) -> Result<CocharLattice> {
    let norm = normalize_cm_type(group, cm_type);
    reciprocity_vectors_normalized(&norm.group)
}

pub(crate) fn reciprocity_vectors_normalized(group: &CmGaloisGroup) -> Result<CocharLattice> {
    let g = group.g();
    let standard = CmType::standard(g);
    let data = reflex(group, &standard)?;
    // Cosets Fh'β are the fibres of β ↦ β(Σ). Keep the first and last
    // representative met to check that both give the same vector.
    let mut cosets: BTreeMap<Vec<i32>, (usize, usize)> = BTreeMap::new();
    for (i, beta) in group.elements().iter().enumerate() {
        cosets.entry(image_of_standard(beta)).and_modify(|e| e.1 = i).or_insert((i, i));
    }
    if cosets.len() != data.reflex_degree {
        return Err(Error::InvariantViolation(format!(
            "{} coset images for reflex degree {}",
            cosets.len(),
            data.reflex_degree
        )));
    }
    let stab = &data.reflex_subgroup;
    let mut rows = Vec::with_capacity(cosets.len());
    for (image, &(first, last)) in &cosets {
        let (a, b) = (&group.elements()[first], &group.elements()[last]);
        // Same coset means a·b⁻¹ ∈ Fh'.
        if stab.binary_search(&a.then(&b.inverse())).is_err() {
            return Err(Error::InvariantViolation("coset representatives disagree".into()));
        }
        rows.push(cochar_row(g, image)?);
    }
    rows.sort();
    Ok(CocharLattice { g, basis_labels: basis_labels(g), generators: IntegerMatrix::from_rows(rows, g + 1)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub g: usize,
    pub reflex_degree: usize,
    pub rank_l_mu: usize,
    /// Invariant factors of `L'_μ / L_μ`.
    #[serde(with = "bigint_serde::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub connected: bool,
    /// `L_μ = X_*(GU_E)`.
    pub full_lattice: bool,
}

impl KernelReport {
    pub fn component_group(&self) -> InvariantFactors {
        InvariantFactors::new(self.invariant_factors.clone(), 0).expect("stored factors form a chain")
    }
}

/// Component group of the kernel of the reciprocity morphism from its lattice.
pub fn kernel_from_lattice(lattice: &CocharLattice) -> Result<KernelReport> {
    let ambient = lattice.g + 1;
    let l_mu = &lattice.generators;
    let saturation = exactalg::saturate(l_mu, ambient)?;
    let quotient = exactalg::relative_quotient_invariants(l_mu, &saturation)?;
    if !quotient.is_finite() {
        return Err(Error::InvariantViolation("L'_mu / L_mu has a free part".into()));
    }
    let full = exactalg::lattice_quotient_invariants(l_mu, ambient)?.is_trivial();
    Ok(KernelReport {
        g: lattice.g,
        reflex_degree: lattice.reflex_degree(),
        rank_l_mu: exactalg::rank(l_mu),
        connected: quotient.is_trivial(),
        invariant_factors: quotient.factors().to_vec(),
        full_lattice: full,
    })
}

pub fn kernel_component_group(group: &CmGaloisGroup, cm_type: &CmType) -> Result<KernelReport> {
    kernel_from_lattice(&reciprocity_vectors(group, cm_type)?)
}

/// Everything reported for one CM datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub g: usize,
    pub order: usize,
    pub v: u32,
    pub reflex_degree: usize,
    #[serde(with = "bigint_serde::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub connected: bool,
    pub full_lattice: bool,
    pub primitive: bool,
    pub rank_l_mu: usize,
    pub g0_order: usize,
    pub fg_sigma_order: usize,
}

pub fn analyze_datum(group: &CmGaloisGroup, cm_type: &CmType) -> Result<DatumReport> {
    let refl = reflex(group, cm_type)?;
    let kernel = kernel_component_group(group, cm_type)?;
    if kernel.reflex_degree != refl.reflex_degree {
        return Err(Error::InvariantViolation("reflex degree differs between routes".into()));
    }
    Ok(DatumReport {
        g: group.g(),
        order: group.order(),
        v: refl.v,
        reflex_degree: refl.reflex_degree,
        invariant_factors: kernel.invariant_factors,
        connected: kernel.connected,
        full_lattice: kernel.full_lattice,
        primitive: is_primitive(group, cm_type)?,
        rank_l_mu: kernel.rank_l_mu,
        g0_order: refl.g0_order,
        fg_sigma_order: refl.fg_sigma_order,
    })
}
