//! Sublattices of `Z^n` given by generating rows: quotients, saturation,
//! kernels and coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::factors::InvariantFactors;
use super::matrix::IntegerMatrix;
use super::smith::{smith_decomposition, smith_invariants};
use crate::error::{Error, Result};

fn check_width(gens: &IntegerMatrix, ambient_rank: usize) -> Result<()> {
    if gens.cols() != ambient_rank {
        return Err(Error::Dimension(format!(
            "generators have {} columns but the ambient lattice has rank {ambient_rank}",
            gens.cols()
        )));
    }
    Ok(())
}

pub fn rank(m: &IntegerMatrix) -> usize {
    smith_invariants(m).len()
}

/// Invariant factors of `Z^ambient_rank / span(rows)`.
pub fn lattice_quotient_invariants(gens: &IntegerMatrix, ambient_rank: usize) -> Result<InvariantFactors> {
    check_width(gens, ambient_rank)?;
    let diag = smith_invariants(gens);
    Ok(InvariantFactors::from_smith_diagonal(&diag, ambient_rank - diag.len()))
}

/// Basis (rows, Hermite normal form) of `(span(rows) ⊗ Q) ∩ Z^ambient_rank`.
pub fn saturate(gens: &IntegerMatrix, ambient_rank: usize) -> Result<IntegerMatrix> {
    check_width(gens, ambient_rank)?;
    let sd = smith_decomposition(gens);
    let r = sd.invariants.len();
    // gens = U^{-1} D V^{-1}, so the leading r rows of V^{-1} span the saturation.
    let rows: Vec<Vec<BigInt>> = (0..r).map(|i| sd.right_inverse.row(i).to_vec()).collect();
    let basis = IntegerMatrix::from_rows(rows, ambient_rank)?;
    Ok(hermite_normal_form(&basis))
}

/// Row-style Hermite normal form with zero rows removed: leading entries positive,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.row_vecs();
    let cols = m.cols();
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row >= a.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry is left.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[pivot_row][c]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(&top[pivot_row]) {
                        *x -= &q * y;
                    }
                    done &= a[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < a.len() && !a[pivot_row][c].is_zero() {
            if a[pivot_row][c].is_negative() {
                for x in a[pivot_row].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..pivot_row {
                let q = a[i][c].div_floor(&a[pivot_row][c]);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(pivot_row);
                    for (x, y) in top[i].iter_mut().zip(&rest[0]) {
                        *x -= &q * y;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    a.truncate(pivot_row);
    IntegerMatrix::from_rows(a, cols).expect("rows keep their width")
}

/// Rows form a basis of `{x : m x = 0}` inside `Z^{m.cols()}`.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let sd = smith_decomposition(m);
    let r = sd.invariants.len();
    let n = m.cols();
    let rows: Vec<Vec<BigInt>> = (r..n).map(|j| (0..n).map(|i| sd.right.get(i, j).clone()).collect()).collect();
    IntegerMatrix::from_rows(rows, n).expect("kernel rows have the column width")
}

/// Integer row vector `x` with `x * basis = v`, if one exists.
pub fn solve_left(basis: &IntegerMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != basis.cols() {
        return Err(Error::Dimension("target vector width differs from basis width".into()));
    }
    let sd = smith_decomposition(basis);
    // x U^{-1} D = v V; set y = x U^{-1}.
    let vv: Vec<BigInt> =
        (0..basis.cols()).map(|j| v.iter().enumerate().map(|(i, vi)| vi * sd.right.get(i, j)).sum()).collect();
    let r = sd.invariants.len();
    if vv[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![BigInt::zero(); basis.rows()];
    for i in 0..r {
        let (q, rem) = vv[i].div_rem(&sd.invariants[i]);
        if !rem.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    let x = (0..basis.rows()).map(|j| y.iter().enumerate().map(|(i, yi)| yi * sd.left.get(i, j)).sum()).collect();
    Ok(Some(x))
}

/// Invariant factors of `span(sub) / span(sub) ∩ ...`: more precisely the quotient
/// `span(sup) / span(sub)`, where `sup` rows are linearly independent and every
/// row of `sub` lies in `span(sup)`.
pub fn relative_quotient_invariants(sub: &IntegerMatrix, sup: &IntegerMatrix) -> Result<InvariantFactors> {
    if sub.cols() != sup.cols() {
        return Err(Error::Dimension("sublattice and superlattice widths differ".into()));
    }
    let r = sup.rows();
    if rank(sup) != r {
        return Err(Error::Structure("superlattice rows are not independent".into()));
    }
    let mut coords = Vec::with_capacity(sub.rows());
    for i in 0..sub.rows() {
        match solve_left(sup, sub.row(i))? {
            Some(x) => coords.push(x),
            None => return Err(Error::Structure(format!("generator {i} does not lie in the superlattice"))),
        }
    }
    let c = IntegerMatrix::from_rows(coords, r)?;
    lattice_quotient_invariants(&c, r)
}
