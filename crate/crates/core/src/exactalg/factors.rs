use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structure of a finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/factors[i]`.
///
/// Factors are all ≥ 2 and each divides the next; the trivial group has no
/// factors and zero free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFactors {
    #[serde(with = "super::bigint_serde::vec")]
    factors: Vec<BigInt>,
    free_rank: usize,
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        InvariantFactors { factors: Vec::new(), free_rank: 0 }
    }

    /// Checks the divisibility chain; unit entries are rejected.
    pub fn new(factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|f| **f < BigInt::from(2)) {
            return Err(Error::Structure(format!("invariant factor {bad} is below 2")));
        }
        for w in factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Structure(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(InvariantFactors { factors, free_rank })
    }

    /// Drops unit entries from a raw Smith diagonal.
    pub fn from_smith_diagonal(diagonal: &[BigInt], free_rank: usize) -> Self {
        let factors = diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        InvariantFactors { factors, free_rank }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn torsion(&self) -> InvariantFactors {
        InvariantFactors { factors: self.factors.clone(), free_rank: 0 }
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_chain() {
        assert!(InvariantFactors::new(vec![BigInt::from(2), BigInt::from(3)], 0).is_err());
        assert!(InvariantFactors::new(vec![BigInt::from(1)], 0).is_err());
        assert!(InvariantFactors::new(vec![BigInt::from(2), BigInt::from(6)], 1).is_ok());
    }

    #[test]
    fn display_and_json() {
        let f = InvariantFactors::new(vec![BigInt::from(2)], 1).unwrap();
        assert_eq!(f.to_string(), "Z/2 + Z");
        assert_eq!(InvariantFactors::trivial().to_string(), "0");
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"factors":[2],"free_rank":1}"#);
    }
}
