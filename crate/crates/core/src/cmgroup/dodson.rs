//! The extension `1 → (Z/2)^v → Fg → Fg₀ → 1` of a CM Galois group by its
//! pure sign changes, and the cocycle attached to a section.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::group::CmGaloisGroup;
use super::perm::{SignVector, SignedPermutation};
use crate::error::{Error, Result};

/// Largest `g` for the exhaustive search in [`cocycle_splitting`].
pub const MAX_SPLITTING_DEGREE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodsonData {
    pub g: usize,
    pub v: u32,
    /// Image `Fg₀ ⊂ S_g`, sorted; each entry lists `σ(1), …, σ(g)`.
    pub g0_elements: Vec<Vec<u32>>,
    /// Sign part of the chosen lift of each entry of `g0_elements`.
    pub section: Vec<SignVector>,
    /// `Fg ∩ (Z/2)^g`, sorted.
    pub v_subgroup: Vec<SignVector>,
    v_lookup: HashSet<SignVector>,
}

impl DodsonData {
    pub fn in_v(&self, b: SignVector) -> bool {
        self.v_lookup.contains(&b)
    }

    pub fn g0_order(&self) -> usize {
        self.g0_elements.len()
    }

    pub fn lift(&self, i: usize) -> SignedPermutation {
        SignedPermutation::flip(self.g, self.section[i])
            .then(&SignedPermutation::from_perm(&self.g0_elements[i]).expect("stored permutations are valid"))
    }

    /// Same extension data with a different lift of every `σ`: the section is
    /// shifted by `shifts[i] ∈ (Z/2)^v`.
    pub fn with_section_shift(&self, shifts: &[SignVector]) -> Result<DodsonData> {
        if shifts.len() != self.section.len() || shifts.iter().any(|w| !self.in_v(*w)) {
            return Err(Error::Parameter("section shifts must be elements of (Z/2)^v, one per σ".into()));
        }
        let mut out = self.clone();
        for (s, w) in out.section.iter_mut().zip(shifts) {
            *s = s.xor(*w);
        }
        Ok(out)
    }

    /// `{σ ∈ Fg₀ : s(σ) ∈ (Z/2)^v}`.
    pub fn fg_sigma(&self) -> Vec<usize> {
        (0..self.section.len()).filter(|&i| self.in_v(self.section[i])).collect()
    }
}

#[derive(Serialize)]
struct DodsonJson<'a> {
    g: usize,
    v: u32,
    g0_order: usize,
    g0_elements: &'a [Vec<u32>],
    section: Vec<Vec<i8>>,
    v_subgroup: Vec<Vec<i8>>,
}

impl Serialize for DodsonData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DodsonJson {
            g: self.g,
            v: self.v,
            g0_order: self.g0_order(),
            g0_elements: &self.g0_elements,
            section: self.section.iter().map(|b| b.to_signs(self.g)).collect(),
            v_subgroup: self.v_subgroup.iter().map(|b| b.to_signs(self.g)).collect(),
        }
        .serialize(s)
    }
}

/// Splits `Fg` into sign part and permutation image. The section picks the
/// lexicographically smallest lift of each `σ`.
pub fn dodson_decompose(group: &CmGaloisGroup) -> Result<DodsonData> {
    let g = group.g();
    let mut lifts: BTreeMap<Vec<u32>, SignVector> = BTreeMap::new();
    let mut v_subgroup = Vec::new();
    // Elements are sorted, so the first lift met is the smallest.
    for x in group.elements() {
        if x.is_pure_sign() {
            v_subgroup.push(x.sign_vector());
        }
        lifts.entry(x.perm_part()).or_insert_with(|| x.sign_vector());
    }
    v_subgroup.sort();
    let n = v_subgroup.len();
    if !n.is_power_of_two() {
        return Err(Error::InvariantViolation(format!("sign subgroup has order {n}")));
    }
    let v = n.trailing_zeros();
    let v_lookup: HashSet<SignVector> = v_subgroup.iter().copied().collect();
    if !v_lookup.contains(&SignVector::all(g)) {
        return Err(Error::InvariantViolation("rho is missing from the sign subgroup".into()));
    }
    let (g0_elements, section): (Vec<_>, Vec<_>) = lifts.into_iter().unzip();
    if group.order() != n * g0_elements.len() {
        return Err(Error::InvariantViolation(format!(
            "|Fg| = {} but 2^v·|Fg0| = {}",
            group.order(),
            n * g0_elements.len()
        )));
    }
    let mut reach = vec![false; g];
    for p in &g0_elements {
        reach[p[0] as usize - 1] = true;
    }
    if !reach.iter().all(|&b| b) {
        return Err(Error::InvariantViolation("Fg0 is not transitive on {1..g}".into()));
    }
    let data = DodsonData { g, v, g0_elements, section, v_subgroup, v_lookup };
    for i in 0..data.g0_order() {
        if !group.contains(&data.lift(i)) {
            return Err(Error::InvariantViolation("a section value is not a lift".into()));
        }
    }
    Ok(data)
}

/// Cocycle condition for a candidate `b`: `s(σ) + b + σ^*(b) ∈ (Z/2)^v` for all `σ`.
fn splits_with(data: &DodsonData, b: SignVector) -> bool {
    data.g0_elements.iter().zip(&data.section).all(|(perm, s)| data.in_v(s.xor(b).xor(b.pull(perm))))
}

/// Searches `(Z/2)^g` for `b` trivializing the cocycle `js`; `b` then normalizes
/// the CM type so that every `σ` has a lift without sign changes, and the
/// corresponding reflex field has degree `2^v`.
pub fn cocycle_splitting(group: &CmGaloisGroup) -> Result<Option<SignVector>> {
    let g = group.g();
    if g > MAX_SPLITTING_DEGREE {
        return Err(Error::Resource(format!("cocycle search over 2^{g} sign vectors refused")));
    }
    let data = dodson_decompose(group)?;
    let Some(b) = (0..1u32 << g).map(SignVector).find(|&b| splits_with(&data, b)) else {
        return Ok(None);
    };
    // Recheck on explicit group elements: conjugating by b must give a group
    // in which every σ has a lift whose sign part lies in (Z/2)^v.
    let f = SignedPermutation::flip(g, b);
    for i in 0..data.g0_order() {
        let conj = f.then(&data.lift(i)).then(&f);
        if !data.in_v(conj.sign_vector()) {
            return Err(Error::InvariantViolation(format!("splitting witness {b:?} fails recheck")));
        }
    }
    Ok(Some(b))
}
