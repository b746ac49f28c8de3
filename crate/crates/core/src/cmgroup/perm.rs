use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subset of `{1, …, g}` encoded as a bitmask (bit `k-1` ↔ coordinate `k`),
/// read as an element of `(Z/2)^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignVector(pub u32);

impl SignVector {
    pub fn all(g: usize) -> Self {
        SignVector(if g >= 32 { u32::MAX } else { (1u32 << g) - 1 })
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> (k - 1) & 1 == 1
    }

    pub fn xor(self, other: SignVector) -> SignVector {
        SignVector(self.0 ^ other.0)
    }

    /// The vector `k ↦ b_{σ(k)}` for a plain permutation `σ` given by images.
    pub fn pull(self, perm: &[u32]) -> SignVector {
        let mut out = 0u32;
        for (i, &target) in perm.iter().enumerate() {
            if self.contains(target as usize) {
                out |= 1 << i;
            }
        }
        SignVector(out)
    }

    /// `±1` entries, `-1` where the coordinate is flipped.
    pub fn to_signs(self, g: usize) -> Vec<i8> {
        (1..=g).map(|k| if self.contains(k) { -1 } else { 1 }).collect()
    }

    pub fn from_signs(signs: &[i8]) -> Self {
        SignVector(signs.iter().enumerate().filter(|(_, &s)| s < 0).fold(0, |acc, (i, _)| acc | (1 << i)))
    }
}

/// A bijection of `J = {±1, …, ±g}` commuting with `k ↦ -k`, i.e. an element of
/// the hyperoctahedral group `C_g = (Z/2)^g ⋊ S_g`.
///
/// Stored as the images of `1, …, g`; the image of `-k` is `-image(k)`.
/// Groups act on the right: `act(p, x·y) = act(act(p, x), y)`, so
/// [`SignedPermutation::then`] is the group product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;

    fn try_from(images: Vec<i32>) -> Result<Self> {
        SignedPermutation::new(images)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(p: SignedPermutation) -> Self {
        p.images
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let g = images.len();
        if g == 0 {
            return Err(Error::Parameter("a signed permutation needs g >= 1".into()));
        }
        let mut seen = vec![false; g];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if x == 0 || a > g || seen[a - 1] {
                return Err(Error::Parameter(format!("{images:?} is not a signed permutation of {{±1..±{g}}}")));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(g: usize) -> Self {
        SignedPermutation { images: (1..=g as i32).collect() }
    }

    /// Global negation `k ↦ -k`, the complex conjugation.
    pub fn rho(g: usize) -> Self {
        SignedPermutation { images: (1..=g as i32).map(|k| -k).collect() }
    }

    /// Pure sign change at the coordinates of `b`.
    pub fn flip(g: usize, b: SignVector) -> Self {
        SignedPermutation { images: (1..=g as i32).map(|k| if b.contains(k as usize) { -k } else { k }).collect() }
    }

    /// Unsigned permutation with `k ↦ perm[k-1]`.
    pub fn from_perm(perm: &[u32]) -> Result<Self> {
        Self::new(perm.iter().map(|&x| x as i32).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn apply(&self, p: i32) -> i32 {
        let v = self.images[p.unsigned_abs() as usize - 1];
        if p > 0 {
            v
        } else {
            -v
        }
    }

    /// Product `self · other`: first `self`, then `other`.
    pub fn then(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation { images: self.images.iter().map(|&x| other.apply(x)).collect() }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            let k = i as i32 + 1;
            images[x.unsigned_abs() as usize - 1] = if x > 0 { k } else { -k };
        }
        SignedPermutation { images }
    }

    /// The function `p ↦ c(self(c⁻¹(p)))`.
    pub fn conjugate_by(&self, c: &SignedPermutation) -> SignedPermutation {
        c.inverse().then(self).then(c)
    }

    /// Image in `S_g`: `k ↦ |image(k)|`.
    pub fn perm_part(&self) -> Vec<u32> {
        self.images.iter().map(|x| x.unsigned_abs()).collect()
    }

    /// Coordinates `k` with `image(k) < 0`; with [`Self::perm_part`] this splits
    /// the element as a sign change followed by a permutation.
    pub fn sign_vector(&self) -> SignVector {
        SignVector(self.images.iter().enumerate().filter(|(_, &x)| x < 0).fold(0, |acc, (i, _)| acc | (1 << i)))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    pub fn is_pure_sign(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x.unsigned_abs() as usize == i + 1)
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.then(self);
            n += 1;
        }
        n
    }
}

/// Index of a point of `J` in `0..2g`.
pub(crate) fn point_index(p: i32, g: usize) -> usize {
    if p > 0 {
        p as usize - 1
    } else {
        g + (-p) as usize - 1
    }
}
