use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use serde::Serialize;

use super::perm::{point_index, SignVector, SignedPermutation};
use crate::error::{Error, Result};

/// Largest group order [`SignedPermGroup::closure`] will build unless told otherwise.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Largest `g` accepted by closure; sign vectors are stored in 32 bits.
pub const MAX_CLOSURE_DEGREE: usize = 31;

/// A finite subgroup of `C_g`, stored as its canonically sorted element list.
#[derive(Clone, Debug)]
pub struct SignedPermGroup {
    g: usize,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
}

impl PartialEq for SignedPermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.elements == other.elements
    }
}

impl Eq for SignedPermGroup {}

impl SignedPermGroup {
    /// Subgroup generated by `generators`, by breadth-first closure.
    pub fn closure(generators: &[SignedPermutation], g: usize, cap: usize) -> Result<Self> {
        if g == 0 || g > MAX_CLOSURE_DEGREE {
            return Err(Error::Resource(format!("closure supports 1 <= g <= {MAX_CLOSURE_DEGREE}, got {g}")));
        }
        if let Some(bad) = generators.iter().find(|x| x.degree() != g) {
            return Err(Error::Dimension(format!("generator {bad:?} does not act on {{±1..±{g}}}")));
        }
        let id = SignedPermutation::identity(g);
        let mut seen: HashMap<SignedPermutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = x.then(s);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::Resource(format!("group order exceeds the closure cap {cap}")));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_sorted(g, seen.into_keys().collect()))
    }

    /// Wraps an element set, checking that it is a subgroup.
    pub fn from_elements(g: usize, elements: Vec<SignedPermutation>) -> Result<Self> {
        if elements.iter().any(|x| x.degree() != g) {
            return Err(Error::Dimension("elements of mixed degree".into()));
        }
        let group = Self::from_sorted(g, elements);
        if !group.contains(&SignedPermutation::identity(g)) {
            return Err(Error::Structure("element set lacks the identity".into()));
        }
        for x in &group.elements {
            for y in &group.elements {
                if !group.contains(&x.then(y)) {
                    return Err(Error::Structure(format!("{x:?}·{y:?} leaves the set")));
                }
            }
        }
        Ok(group)
    }

    pub(crate) fn from_sorted(g: usize, mut elements: Vec<SignedPermutation>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        SignedPermGroup { g, elements, index }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &SignedPermutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Orbit of `p` in `J`, as a membership table indexed by point.
    pub fn orbit(&self, p: i32) -> Vec<bool> {
        let mut hit = vec![false; 2 * self.g];
        for x in &self.elements {
            hit[point_index(x.apply(p), self.g)] = true;
        }
        hit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).into_iter().all(|b| b)
    }

    /// Checks, in order, that `ρ` belongs to the group and that the action on
    /// all `2g` points is transitive.
    pub fn validate_cm(&self) -> CmValidation {
        let has_rho = self.contains(&SignedPermutation::rho(self.g));
        let transitive = self.is_transitive();
        let failure = if !has_rho {
            Some("complex conjugation rho is not in the group".to_string())
        } else if !transitive {
            Some(format!("the action on the {} points of J is not transitive", 2 * self.g))
        } else {
            None
        };
        CmValidation { valid: failure.is_none(), contains_rho: has_rho, transitive, failure }
    }

    /// The group `c⁻¹·G·c`, i.e. the same action transported along `c`.
    pub fn conjugate_by(&self, c: &SignedPermutation) -> Self {
        Self::from_sorted(self.g, self.elements.iter().map(|x| x.conjugate_by(c)).collect())
    }

    pub fn conjugate_by_flip(&self, b: SignVector) -> Self {
        self.conjugate_by(&SignedPermutation::flip(self.g, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmValidation {
    pub valid: bool,
    pub contains_rho: bool,
    pub transitive: bool,
    pub failure: Option<String>,
}

/// A subgroup of `C_g` that contains `ρ` and is transitive on `J`: the
/// combinatorial shadow of `Gal(E^c/Q)` for a CM field `E` of degree `2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmGaloisGroup(SignedPermGroup);

impl CmGaloisGroup {
    pub fn new(group: SignedPermGroup) -> Result<Self> {
        let report = group.validate_cm();
        match report.failure {
            None => Ok(CmGaloisGroup(group)),
            Some(why) => Err(Error::Precondition(format!("not a CM Galois group: {why}"))),
        }
    }

    pub fn from_generators(generators: &[SignedPermutation], g: usize, cap: usize) -> Result<Self> {
        Self::new(SignedPermGroup::closure(generators, g, cap)?)
    }

    pub fn rho_index(&self) -> usize {
        self.0.position(&SignedPermutation::rho(self.0.g)).expect("validated group contains rho")
    }

    pub fn as_group(&self) -> &SignedPermGroup {
        &self.0
    }

    pub fn into_group(self) -> SignedPermGroup {
        self.0
    }

    pub fn conjugate_by(&self, c: &SignedPermutation) -> Self {
        CmGaloisGroup(self.0.conjugate_by(c))
    }
}

impl Deref for CmGaloisGroup {
    type Target = SignedPermGroup;

    fn deref(&self) -> &SignedPermGroup {
        &self.0
    }
}

/// Generators of the whole of `C_g`: the flip at coordinate 1, a transposition
/// and a `g`-cycle.
pub fn hyperoctahedral_generators(g: usize) -> Vec<SignedPermutation> {
    let mut gens = vec![SignedPermutation::flip(g, SignVector(1))];
    if g >= 2 {
        let mut swap: Vec<u32> = (1..=g as u32).collect();
        swap.swap(0, 1);
        gens.push(SignedPermutation::from_perm(&swap).expect("transposition"));
        let cycle: Vec<u32> = (1..=g as u32).map(|k| k % g as u32 + 1).collect();
        gens.push(SignedPermutation::from_perm(&cycle).expect("cycle"));
    }
    gens
}
