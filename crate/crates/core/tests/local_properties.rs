use cmorbit_core::arith::weight;
use cmorbit_core::classical::{class_number_iq, reduced_form_count, FundamentalDiscriminant};
use cmorbit_core::localinv::{
    block_diagonal, cyclotomic_companion, h1_cyclic, h1_general, invariant_rank, matrix_order, tame_conductor_check,
    LatticeAction,
};
use cmorbit_core::IntegerMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Unimodular `P` and its inverse from a word in elementary operations.
fn unimodular(d: usize, word: &[(usize, usize, bool)]) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(d);
    let mut p_inv = IntegerMatrix::identity(d);
    for &(i, j, neg) in word {
        let (i, j) = (i % d, j % d);
        if i == j {
            continue;
        }
        let s: i64 = if neg { -1 } else { 1 };
        let mut e = IntegerMatrix::identity(d);
        e.set(i, j, BigInt::from(s));
        let mut e_inv = IntegerMatrix::identity(d);
        e_inv.set(i, j, BigInt::from(-s));
        p = &p * &e;
        p_inv = &e_inv * &p_inv;
    }
    (p, p_inv)
}

/// A faithful cyclic action built from cyclotomic blocks and signs.
fn cyclic_matrix(blocks: &[u64], d_max: usize) -> IntegerMatrix {
    let mut mats = Vec::new();
    let mut dim = 0;
    for &m in blocks {
        let c = cyclotomic_companion(m);
        if dim + c.rows() <= d_max {
            dim += c.rows();
            mats.push(c);
        }
    }
    if mats.is_empty() {
        mats.push(IntegerMatrix::from_i64(1, 1, &[-1]).unwrap());
    }
    block_diagonal(&mats)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn h1_is_invariant_under_unimodular_conjugation(
        blocks in prop::collection::vec(1u64..=12, 1..4),
        word in prop::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..8),
    ) {
        let sigma = cyclic_matrix(&blocks, 6);
        prop_assume!(matrix_order(&sigma).unwrap() <= 12);
        let (p, p_inv) = unimodular(sigma.rows(), &word);
        let conj = &(&p_inv * &sigma) * &p;
        let base = h1_cyclic(&sigma).unwrap();
        prop_assert_eq!(&h1_cyclic(&conj).unwrap(), &base);
        let action = LatticeAction::cyclic(&conj).unwrap();
        prop_assert_eq!(h1_general(&action).unwrap(), base);
    }

    #[test]
    fn faithful_cyclic_actions_respect_weight_and_tame_bound(
        blocks in prop::collection::vec(1u64..=30, 1..4),
        word in prop::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..6),
    ) {
        let sigma = cyclic_matrix(&blocks, 6);
        let (p, p_inv) = unimodular(sigma.rows(), &word);
        let sigma = &(&p_inv * &sigma) * &p;
        let n = matrix_order(&sigma).unwrap();
        prop_assert!(weight(n as u64).unwrap().weight as usize <= sigma.rows());
        let rep = tame_conductor_check(&sigma, n).unwrap();
        prop_assert!(rep.holds);
        prop_assert_eq!(rep.conductor, sigma.rows() - invariant_rank(sigma.rows(), std::slice::from_ref(&sigma)));
    }
}

#[test]
fn class_number_routes_agree_up_to_two_thousand() {
    for d in -2000i64..0 {
        if let Ok(fd) = FundamentalDiscriminant::new(d) {
            assert_eq!(class_number_iq(fd, 40).unwrap(), reduced_form_count(fd), "D = {d}");
        }
    }
}
