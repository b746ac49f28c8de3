use serde::{Deserialize, Serialize};

use super::perm::{point_index, SignVector, SignedPermutation};
use crate::error::{Error, Result};

/// A CM type: one point from each pair `{k, -k}` of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct CmType {
    sigma: Vec<i32>,
}

impl TryFrom<Vec<i32>> for CmType {
    type Error = Error;

    fn try_from(v: Vec<i32>) -> Result<Self> {
        CmType::new(v)
    }
}

impl From<CmType> for Vec<i32> {
    fn from(t: CmType) -> Self {
        t.sigma
    }
}

impl CmType {
    pub fn new(mut sigma: Vec<i32>) -> Result<Self> {
        let g = sigma.len();
        let mut seen = vec![false; g];
        for &p in &sigma {
            let a = p.unsigned_abs() as usize;
            if p == 0 || a > g || seen[a - 1] {
                return Err(Error::Parameter(format!(
                    "{sigma:?} is not a CM type: it must contain exactly one of ±k for each k"
                )));
            }
            seen[a - 1] = true;
        }
        sigma.sort_by_key(|p| (p.unsigned_abs(), *p));
        Ok(CmType { sigma })
    }

    /// `Σ = {1, …, g}`.
    pub fn standard(g: usize) -> Self {
        CmType { sigma: (1..=g as i32).collect() }
    }

    pub fn from_flip(g: usize, b: SignVector) -> Self {
        CmType { sigma: (1..=g as i32).map(|k| if b.contains(k as usize) { -k } else { k }).collect() }
    }

    pub fn g(&self) -> usize {
        self.sigma.len()
    }

    pub fn points(&self) -> &[i32] {
        &self.sigma
    }

    pub fn contains(&self, p: i32) -> bool {
        self.sigma.contains(&p)
    }

    /// Coordinates `k` with `-k ∈ Σ`; flipping them sends `Σ` to `{1, …, g}`.
    pub fn flip_vector(&self) -> SignVector {
        SignVector(self.sigma.iter().filter(|&&p| p < 0).fold(0, |acc, &p| acc | 1 << ((-p) as u32 - 1)))
    }

    pub fn is_standard(&self) -> bool {
        self.sigma.iter().all(|&p| p > 0)
    }

    /// Membership table over the `2g` points of `J`.
    pub fn mask(&self) -> Vec<bool> {
        let g = self.g();
        let mut m = vec![false; 2 * g];
        for &p in &self.sigma {
            m[point_index(p, g)] = true;
        }
        m
    }

    /// `Σ.x = {x(p) : p ∈ Σ}`.
    pub fn image(&self, x: &SignedPermutation) -> CmType {
        CmType::new(self.sigma.iter().map(|&p| x.apply(p)).collect()).expect("C_g preserves CM types")
    }
}
