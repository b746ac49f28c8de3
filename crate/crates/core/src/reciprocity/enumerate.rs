//! Exhaustive list of CM data `(Fg, Σ)` for small `g`, up to conjugacy in `C_g`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::cmgroup::{
    hyperoctahedral_generators, CmGaloisGroup, CmType, SignedPermGroup, SignedPermutation, DEFAULT_CLOSURE_CAP,
};
use crate::error::{Error, Result};

/// Largest `g` accepted by [`enumerate_cm_data`] (`|C_4| = 384`).
pub const MAX_ENUMERATION_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedDatum {
    pub group: CmGaloisGroup,
    pub cm_type: CmType,
}

type Bits = Vec<u64>;

fn bit(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// `C_g` with its multiplication table on element indices.
struct Ambient {
    g: usize,
    elements: Vec<SignedPermutation>,
    mul: Vec<u16>,
    index: HashMap<SignedPermutation, usize>,
}

impl Ambient {
    fn new(g: usize) -> Result<Self> {
        let full = SignedPermGroup::closure(&hyperoctahedral_generators(g), g, DEFAULT_CLOSURE_CAP)?;
        let elements = full.elements().to_vec();
        let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * n + j] = index[&x.then(y)] as u16;
            }
        }
        Ok(Ambient { g, elements, mul, index })
    }

    fn n(&self) -> usize {
        self.elements.len()
    }

    fn words(&self) -> usize {
        self.n().div_ceil(64)
    }

    fn product(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n() + j] as usize
    }

    /// Subgroup generated by `start` (already a subgroup) and the extra
    /// generators, closing under right multiplication.
    fn extend(&self, start: &[usize], gens: &[usize]) -> (Bits, Vec<usize>) {
        let mut bits = vec![0u64; self.words()];
        let mut list = start.to_vec();
        for &i in start {
            set_bit(&mut bits, i);
        }
        let mut k = 0;
        while k < list.len() {
            let a = list[k];
            for &s in gens {
                let b = self.product(a, s);
                if !bit(&bits, b) {
                    set_bit(&mut bits, b);
                    list.push(b);
                }
            }
            k += 1;
        }
        (bits, list)
    }

    fn is_transitive(&self, members: &[usize]) -> bool {
        let mut hit = vec![false; 2 * self.g];
        for &i in members {
            let p = self.elements[i].apply(1);
            hit[if p > 0 { p as usize - 1 } else { self.g + p.unsigned_abs() as usize - 1 }] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Index maps `x ↦ π⁻¹·x·π` for every plain permutation `π`.
    fn permutation_conjugations(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .filter(|p| p.sign_vector().0 == 0)
            .map(|p| self.elements.iter().map(|x| self.index[&x.conjugate_by(p)]).collect())
            .collect()
    }

    fn canonical_key(&self, members: &[usize], conj: &[Vec<usize>]) -> Bits {
        conj.iter()
            .map(|map| {
                let mut bits = vec![0u64; self.words()];
                for &i in members {
                    set_bit(&mut bits, map[i]);
                }
                bits
            })
            .min()
            .expect("S_g is nonempty")
    }
}

/// All subgroups of `C_g` that contain `ρ` and act transitively on `J`, each
/// paired with `Σ = {1, …, g}`, one per conjugacy class.
///
/// Transporting a datum along `c ∈ C_g` and renormalizing the CM type by a sign
/// change amounts to conjugating by a plain permutation, so classes are taken
/// under `S_g`. Output is sorted by group order, then by canonical form.
pub fn enumerate_cm_data(g: usize) -> Result<Vec<EnumeratedDatum>> {
    if g == 0 {
        return Err(Error::Parameter("g must be at least 1".into()));
    }
    if g > MAX_ENUMERATION_DEGREE {
        return Err(Error::Resource(format!(
            "subgroup enumeration is limited to g <= {MAX_ENUMERATION_DEGREE}, got {g}"
        )));
    }
    let amb = Ambient::new(g)?;
    let id = amb.index[&SignedPermutation::identity(g)];
    let rho = amb.index[&SignedPermutation::rho(g)];

    // Every subgroup containing ρ is reached from ⟨ρ⟩ by adjoining one element
    // at a time; ⟨H, x⟩ only depends on the coset Hx.
    let (bits0, list0) = amb.extend(&[id], &[rho]);
    let mut seen: HashSet<Bits> = HashSet::from([bits0.clone()]);
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = vec![(list0, vec![rho])];
    let mut next = 0;
    while next < found.len() {
        let (members, gens) = found[next].clone();
        next += 1;
        let mut covered = vec![0u64; amb.words()];
        for &h in &members {
            set_bit(&mut covered, h);
        }
        for x in 0..amb.n() {
            if bit(&covered, x) {
                continue;
            }
            for &h in &members {
                set_bit(&mut covered, amb.product(h, x));
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let (bits, list) = amb.extend(&members, &new_gens);
            if seen.insert(bits) {
                found.push((list, new_gens));
            }
        }
    }

    let conj = amb.permutation_conjugations();
    let mut classes: Vec<(usize, Bits)> = found
        .par_iter()
        .filter(|(members, _)| amb.is_transitive(members))
        .map(|(members, _)| (members.len(), amb.canonical_key(members, &conj)))
        .collect();
    classes.sort();
    classes.dedup();

    classes
        .into_iter()
        .map(|(_, key)| {
            let elements = (0..amb.n()).filter(|&i| bit(&key, i)).map(|i| amb.elements[i].clone()).collect();
            let group = CmGaloisGroup::new(SignedPermGroup::from_elements(g, elements)?)?;
            Ok(EnumeratedDatum { group, cm_type: CmType::standard(g) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmgroup::normalize_cm_type;

    fn key_of(amb: &Ambient, conj: &[Vec<usize>], group: &SignedPermGroup) -> Bits {
        let members: Vec<usize> = group.elements().iter().map(|x| amb.index[x]).collect();
        amb.canonical_key(&members, conj)
    }

    #[test]
    fn small_counts_and_order() {
        let one = enumerate_cm_data(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].group.order(), 2);
        for g in 2..=3 {
            let data = enumerate_cm_data(g).unwrap();
            assert!(data.windows(2).all(|w| w[0].group.order() <= w[1].group.order()));
            assert!(data.iter().all(|d| d.group.validate_cm().valid));
            assert_eq!(data.last().unwrap().group.order(), (1..=g).product::<usize>() << g);
        }
        assert!(matches!(enumerate_cm_data(5), Err(Error::Resource(_))));
    }

    #[test]
    fn permutation_classes_equal_cg_classes_with_renormalization() {
        for g in 2..=3 {
            let amb = Ambient::new(g).unwrap();
            let conj = amb.permutation_conjugations();
            let data = enumerate_cm_data(g).unwrap();
            let keys: Vec<Bits> = data.iter().map(|d| key_of(&amb, &conj, &d.group)).collect();
            let distinct: HashSet<&Bits> = keys.iter().collect();
            assert_eq!(distinct.len(), data.len());
            for (d, key) in data.iter().zip(&keys) {
                for c in &amb.elements {
                    let moved = d.group.conjugate_by(c);
                    let t = d.cm_type.image(c);
                    let norm = normalize_cm_type(&moved, &t);
                    assert_eq!(&key_of(&amb, &conj, &norm.group), key);
                }
            }
        }
    }

    #[test]
    fn deterministic_output() {
        assert_eq!(enumerate_cm_data(3).unwrap(), enumerate_cm_data(3).unwrap());
    }
}
