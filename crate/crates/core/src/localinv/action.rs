//! Finite groups of integer matrices acting on `Z^d` (column vectors).

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{self, IntegerMatrix};

/// Largest group order built by closure unless a caller asks otherwise.
pub const DEFAULT_ACTION_CAP: usize = 10_000;

/// Largest matrix order searched by [`matrix_order`].
pub const MAX_MATRIX_ORDER: usize = 10_000;

/// Action as read from JSON: `{"dim": d, "generators": [[row-major ints]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
}

impl ActionSpec {
    pub fn matrices(&self) -> Result<Vec<IntegerMatrix>> {
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.dim * self.dim {
                    return Err(Error::Dimension(format!("generator with {} entries for dim {}", g.len(), self.dim)));
                }
                IntegerMatrix::from_i64(self.dim, self.dim, g)
            })
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<LatticeAction> {
        LatticeAction::from_generators(self.dim, &self.matrices()?, cap)
    }
}

/// A finite subgroup of `GL_d(Z)`, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAction {
    dim: usize,
    elements: Vec<IntegerMatrix>,
}

fn check_unimodular(m: &IntegerMatrix, dim: usize) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::Dimension(format!("expected a {dim}x{dim} matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !m.determinant()?.abs().is_one() {
        return Err(Error::Domain(format!("matrix is not invertible over Z:\n{m}")));
    }
    Ok(())
}

impl LatticeAction {
    /// Group generated by `generators`; `cap` bounds the order.
    pub fn from_generators(dim: usize, generators: &[IntegerMatrix], cap: usize) -> Result<Self> {
        for m in generators {
            check_unimodular(m, dim)?;
        }
        let id = IntegerMatrix::identity(dim);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Domain(format!(
                            "generated group has more than {cap} elements (infinite or too large)"
                        )));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort();
        Ok(LatticeAction { dim, elements })
    }

    /// Wraps a complete element list, checking closure.
    pub fn from_elements(dim: usize, mut elements: Vec<IntegerMatrix>) -> Result<Self> {
        for m in &elements {
            check_unimodular(m, dim)?;
        }
        elements.sort();
        elements.dedup();
        let set: HashSet<&IntegerMatrix> = elements.iter().collect();
        if !set.contains(&IntegerMatrix::identity(dim)) {
            return Err(Error::Structure("matrix set lacks the identity".into()));
        }
        for a in &elements {
            for b in &elements {
                if !set.contains(&(a * b)) {
                    return Err(Error::Structure("matrix set is not closed under products".into()));
                }
            }
        }
        Ok(LatticeAction { dim, elements })
    }

    pub fn cyclic(sigma: &IntegerMatrix) -> Result<Self> {
        Self::from_generators(sigma.rows(), std::slice::from_ref(sigma), MAX_MATRIX_ORDER)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntegerMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &IntegerMatrix) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &LatticeAction) -> bool {
        self.dim == other.dim && self.elements.iter().all(|m| other.contains(m))
    }

    /// Conjugate action `P⁻¹ G P` for a unimodular `P` with inverse `p_inv`.
    pub fn conjugate(&self, p: &IntegerMatrix, p_inv: &IntegerMatrix) -> Result<Self> {
        if !(p * p_inv).is_identity() {
            return Err(Error::Parameter("conjugating matrices are not inverse".into()));
        }
        Self::from_elements(self.dim, self.elements.iter().map(|m| &(p_inv * m) * p).collect())
    }
}

/// Rank of `V^G`, the common fixed vectors of `matrices`.
pub fn invariant_rank(dim: usize, matrices: &[IntegerMatrix]) -> usize {
    let id = IntegerMatrix::identity(dim);
    let mut stacked = IntegerMatrix::zeros(0, dim);
    for m in matrices {
        stacked = stacked.vstack(&m.checked_sub(&id).expect("square matrices")).expect("same width");
    }
    dim - exactalg::rank(&stacked)
}

/// Multiplicative order of a square integer matrix.
pub fn matrix_order(sigma: &IntegerMatrix) -> Result<usize> {
    if !sigma.is_square() {
        return Err(Error::Dimension("order of a non-square matrix".into()));
    }
    let mut power = sigma.clone();
    for n in 1..=MAX_MATRIX_ORDER {
        if power.is_identity() {
            return Ok(n);
        }
        power = &power * sigma;
    }
    Err(Error::Domain(format!("matrix has no finite order up to {MAX_MATRIX_ORDER}")))
}

/// Integer coefficients of the cyclotomic polynomial `Φ_m`, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_k for every proper divisor k.
    let mut poly = vec![BigInt::from(0); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for k in crate::arith::divisors(m).into_iter().filter(|&k| k < m) {
        let divisor = cyclotomic_polynomial(k);
        let deg = divisor.len() - 1;
        let mut quotient = vec![BigInt::from(0); poly.len() - deg];
        for i in (0..quotient.len()).rev() {
            let c = poly[i + deg].clone();
            for (j, d) in divisor.iter().enumerate() {
                poly[i + j] -= &c * d;
            }
            quotient[i] = c;
        }
        poly = quotient;
    }
    poly
}

/// Companion matrix of `Φ_m`: multiplication by `ζ_m` on `Z[ζ_m]`, a faithful
/// action of `Z/m` without nonzero fixed vectors (for `m > 1`).
pub fn cyclotomic_companion(m: u64) -> IntegerMatrix {
    let poly = cyclotomic_polynomial(m);
    let n = poly.len() - 1;
    let mut c = IntegerMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, BigInt::one());
    }
    for (i, a) in poly.iter().take(n).enumerate() {
        c.set(i, n - 1, -a);
    }
    c
}

/// Block-diagonal matrix with the given square blocks.
pub fn block_diagonal(blocks: &[IntegerMatrix]) -> IntegerMatrix {
    let n: usize = blocks.iter().map(IntegerMatrix::rows).sum();
    let mut out = IntegerMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(offset + i, offset + j, b.get(i, j).clone());
            }
        }
        offset += b.rows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| cyclotomic_polynomial(m).iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for m in 2..=30 {
            let c = cyclotomic_companion(m);
            assert_eq!(matrix_order(&c).unwrap(), m as usize);
            assert_eq!(invariant_rank(c.rows(), std::slice::from_ref(&c)), 0);
        }
    }

    #[test]
    fn closure_and_checks() {
        let neg = IntegerMatrix::from_i64(1, 1, &[-1]).unwrap();
        assert_eq!(LatticeAction::cyclic(&neg).unwrap().order(), 2);
        let shear = IntegerMatrix::from_i64(2, 2, &[1, 1, 0, 1]).unwrap();
        assert!(matches!(LatticeAction::cyclic(&shear), Err(Error::Domain(_))));
        let two = IntegerMatrix::from_i64(1, 1, &[2]).unwrap();
        assert!(LatticeAction::cyclic(&two).is_err());
        let spec = ActionSpec { dim: 2, generators: vec![vec![0, -1, 1, 0]] };
        assert_eq!(spec.build(DEFAULT_ACTION_CAP).unwrap().order(), 4);
        assert!(ActionSpec { dim: 2, generators: vec![vec![1, 0, 0]] }.build(10).is_err());
        assert!(LatticeAction::from_elements(1, vec![neg]).is_err());
    }

    #[test]
    fn fixed_ranks() {
        let swap = IntegerMatrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(invariant_rank(2, &[swap]), 1);
        assert_eq!(invariant_rank(3, &[IntegerMatrix::identity(3)]), 3);
    }
}
