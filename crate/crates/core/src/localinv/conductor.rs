//! Artin conductors of lattices with a ramification filtration, and the tame
//! conductor inequality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::action::{invariant_rank, matrix_order, ActionSpec, LatticeAction};
use crate::arith::lambda_const;
use crate::error::{Error, Result};
use crate::exactalg::IntegerMatrix;
use crate::precise::serialize_ratio as ratio_string;

/// Filtration as read from JSON: each level lists generators of `Δ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationSpec {
    pub dim: usize,
    pub levels: Vec<Vec<Vec<i64>>>,
}

impl FiltrationSpec {
    pub fn build(&self, cap: usize) -> Result<RamificationFiltration> {
        let levels = self
            .levels
            .iter()
            .map(|gens| ActionSpec { dim: self.dim, generators: gens.clone() }.build(cap))
            .collect::<Result<Vec<_>>>()?;
        RamificationFiltration::new(self.dim, levels)
    }
}

/// `Δ_0 ⊇ Δ_1 ⊇ … ⊇ Δ_m`, followed implicitly by trivial groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationFiltration {
    dim: usize,
    levels: Vec<LatticeAction>,
}

impl RamificationFiltration {
    pub fn new(dim: usize, levels: Vec<LatticeAction>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Structure("a filtration needs at least the inertia level".into()));
        }
        for (i, level) in levels.iter().enumerate() {
            if level.dim() != dim {
                return Err(Error::Dimension(format!("level {i} acts on Z^{}, expected Z^{dim}", level.dim())));
            }
            if i > 0 && !level.is_subgroup_of(&levels[i - 1]) {
                return Err(Error::Structure(format!("level {i} is not contained in level {}", i - 1)));
            }
        }
        Ok(RamificationFiltration { dim, levels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[LatticeAction] {
        &self.levels
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorReport {
    #[serde(serialize_with = "ratio_string")]
    pub value: BigRational,
    pub integral: bool,
    /// `(g_i, dim V / V^{Δ_i})` per level.
    pub levels: Vec<(usize, usize)>,
}

/// `a(V) = Σ_i (g_i / g_0) · dim(V / V^{Δ_i})`.
pub fn artin_conductor(filtration: &RamificationFiltration) -> ConductorReport {
    let d = filtration.dim;
    let g0 = BigInt::from(filtration.levels[0].order());
    let mut value = BigRational::zero();
    let mut levels = Vec::new();
    for level in &filtration.levels {
        let codim = d - invariant_rank(d, level.elements());
        value += BigRational::new(BigInt::from(level.order() * codim), g0.clone());
        levels.push((level.order(), codim));
    }
    ConductorReport { integral: value.is_integer(), value, levels }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameReport {
    pub dim: usize,
    pub e: usize,
    /// `a = d − rank V^σ`.
    pub conductor: usize,
    #[serde(serialize_with = "ratio_string")]
    pub lambda: BigRational,
    /// `λ(d)·(e − 1)`.
    #[serde(serialize_with = "ratio_string")]
    pub bound: BigRational,
    pub holds: bool,
}

/// Checks `a ≥ λ(d)·(e − 1)` for `σ` generating a faithful action of `Z/e`.
pub fn tame_conductor_check(sigma: &IntegerMatrix, e: usize) -> Result<TameReport> {
    let order = matrix_order(sigma)?;
    if order != e {
        return Err(Error::Precondition(format!("σ has order {order}, so Z/{e} does not act faithfully through it")));
    }
    let d = sigma.rows();
    let conductor = d - invariant_rank(d, std::slice::from_ref(sigma));
    let lambda = lambda_const(d as u32)?.big_ratio();
    let bound = &lambda * BigRational::from_integer(BigInt::from(e - 1));
    Ok(TameReport {
        dim: d,
        e,
        conductor,
        holds: BigRational::from_integer(BigInt::from(conductor)) >= bound,
        lambda,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localinv::action::{block_diagonal, cyclotomic_companion, DEFAULT_ACTION_CAP};

    fn m(d: usize, e: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_i64(d, d, e).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn conductor_examples() {
        let neg = LatticeAction::cyclic(&m(1, &[-1])).unwrap();
        let triv = LatticeAction::cyclic(&m(1, &[1])).unwrap();
        let tame = RamificationFiltration::new(1, vec![neg.clone()]).unwrap();
        assert_eq!(artin_conductor(&tame).value, rat(1, 1));
        let unram = RamificationFiltration::new(1, vec![triv.clone()]).unwrap();
        assert_eq!(artin_conductor(&unram).value, rat(0, 1));
        let wild = RamificationFiltration::new(1, vec![neg.clone(), neg.clone()]).unwrap();
        assert_eq!(artin_conductor(&wild).value, rat(2, 1));
        assert!(matches!(RamificationFiltration::new(1, vec![triv, neg]), Err(Error::Structure(_))));
    }

    #[test]
    fn non_integral_values_are_flagged() {
        // Z/4 acting by rotation with a level-1 subgroup of order 2 fixing nothing.
        let r = m(2, &[0, -1, 1, 0]);
        let g0 = LatticeAction::cyclic(&r).unwrap();
        let g1 = LatticeAction::cyclic(&(&r * &r)).unwrap();
        let spec_levels = RamificationFiltration::new(2, vec![g0, g1]).unwrap();
        let rep = artin_conductor(&spec_levels);
        assert_eq!(rep.value, rat(3, 1));
        let r3 = cyclotomic_companion(3);
        let g0 = LatticeAction::cyclic(&block_diagonal(&[r3.clone(), m(1, &[-1])])).unwrap();
        let g1 = LatticeAction::cyclic(&block_diagonal(&[r3, m(1, &[1])])).unwrap();
        let rep = artin_conductor(&RamificationFiltration::new(3, vec![g0, g1]).unwrap());
        assert_eq!(rep.value, rat(3 + 1, 1));
        let spec = FiltrationSpec { dim: 1, levels: vec![vec![vec![-1]], vec![vec![-1]], vec![vec![1]]] };
        let rep = artin_conductor(&spec.build(DEFAULT_ACTION_CAP).unwrap());
        assert_eq!(rep.value, rat(2, 1));
        let odd = LatticeAction::from_generators(2, &[m(2, &[0, 1, 1, 0]), m(2, &[-1, 0, 0, -1])], 16).unwrap();
        let sub = LatticeAction::cyclic(&m(2, &[0, 1, 1, 0])).unwrap();
        let rep = artin_conductor(&RamificationFiltration::new(2, vec![odd, sub]).unwrap());
        assert_eq!(rep.value, rat(5, 2));
        assert!(!rep.integral);
    }

    #[test]
    fn single_tame_level_is_codimension() {
        for k in [3u64, 4, 5, 8, 12] {
            let c = cyclotomic_companion(k);
            let a = LatticeAction::cyclic(&c).unwrap();
            let rep = artin_conductor(&RamificationFiltration::new(c.rows(), vec![a]).unwrap());
            assert_eq!(rep.value, BigRational::from_integer(BigInt::from(c.rows())));
        }
    }

    #[test]
    fn tame_examples() {
        let r = tame_conductor_check(&m(1, &[-1]), 2).unwrap();
        assert!(r.holds && r.conductor == 1 && r.bound == rat(1, 1));
        let r = tame_conductor_check(&m(2, &[0, -1, 1, 0]), 4).unwrap();
        assert_eq!((r.conductor, r.bound.clone()), (2, rat(6, 5)));
        assert!(r.holds);
        assert!(matches!(tame_conductor_check(&m(2, &[0, -1, 1, 0]), 2), Err(Error::Precondition(_))));
    }
}
