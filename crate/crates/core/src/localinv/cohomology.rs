//! Cohomology of finite groups with coefficients in lattices.
//!
//! Rational cohomology of a finite group vanishes in positive degree, so the
//! cocycles `Z^k` are the saturation of the coboundaries `B^k` inside the
//! cochains `C^k`. Hence `H^k = Z^k / B^k` is the torsion of `C^k / B^k` and
//! only the differential `d^{k-1}` is ever built.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::action::{invariant_rank, matrix_order, LatticeAction};
use crate::error::{Error, Result};
use crate::exactalg::{self, IntegerMatrix, InvariantFactors};

/// Default order limit for [`h1_general`].
pub const H1_ORDER_CAP: usize = 100;

/// Default order limit for [`h2_general`].
pub const H2_ORDER_CAP: usize = 24;

/// `H¹(⟨σ⟩, Z^d) = ker N / im(σ − 1)` with `N = Σ σ^k`.
pub fn h1_cyclic(sigma: &IntegerMatrix) -> Result<InvariantFactors> {
    let n = matrix_order(sigma)?;
    let d = sigma.rows();
    let mut norm = IntegerMatrix::zeros(d, d);
    let mut power = IntegerMatrix::identity(d);
    for _ in 0..n {
        norm = norm.checked_add(&power)?;
        power = &power * sigma;
    }
    let kernel = exactalg::integer_kernel(&norm);
    if kernel.rows() == 0 {
        return Ok(InvariantFactors::trivial());
    }
    let image = sigma.checked_sub(&IntegerMatrix::identity(d))?.transpose();
    let mut coords = Vec::with_capacity(d);
    for i in 0..d {
        let c = exactalg::solve_left(&kernel, image.row(i))?
            .ok_or_else(|| Error::InvariantViolation("(σ - 1)v escapes ker N".into()))?;
        coords.push(c);
    }
    let coords = IntegerMatrix::from_rows(coords, kernel.rows())?;
    let q = exactalg::lattice_quotient_invariants(&coords, kernel.rows())?;
    if !q.is_finite() {
        return Err(Error::InvariantViolation("H^1 of a finite group came out infinite".into()));
    }
    Ok(q)
}

/// Inhomogeneous cochains `C^k = Maps(G^k, Z^d)` with coordinates indexed by
/// `(tuple index) · d + coordinate`.
struct Cochains<'a> {
    action: &'a LatticeAction,
    mul: Vec<usize>,
}

impl<'a> Cochains<'a> {
    fn new(action: &'a LatticeAction) -> Self {
        let el = action.elements();
        let pos: HashMap<&IntegerMatrix, usize> = el.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mul = Vec::with_capacity(el.len() * el.len());
        for a in el {
            for b in el {
                mul.push(pos[&(a * b)]);
            }
        }
        Cochains { action, mul }
    }

    fn n(&self) -> usize {
        self.action.order()
    }

    fn d(&self) -> usize {
        self.action.dim()
    }

    fn prod(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n() + b]
    }

    /// Rows are `d⁰(e_j)`: `(d⁰m)(g) = g·m − m`.
    fn d0(&self) -> IntegerMatrix {
        let (n, d) = (self.n(), self.d());
        let mut out = IntegerMatrix::zeros(d, n * d);
        for (g, m) in self.action.elements().iter().enumerate() {
            for j in 0..d {
                for i in 0..d {
                    let mut v = m.get(i, j).clone();
                    if i == j {
                        v -= 1;
                    }
                    out.set(j, g * d + i, v);
                }
            }
        }
        out
    }

    /// Rows are `d¹` of the basis cochains `f = e_j at h₀`:
    /// `(d¹f)(g, h) = g·f(h) − f(gh) + f(g)`.
    fn d1(&self) -> IntegerMatrix {
        let (n, d) = (self.n(), self.d());
        let el = self.action.elements();
        let mut out = IntegerMatrix::zeros(n * d, n * n * d);
        for h0 in 0..n {
            for j in 0..d {
                let row = h0 * d + j;
                for (g, eg) in el.iter().enumerate() {
                    for h in 0..n {
                        let base = (g * n + h) * d;
                        if h == h0 {
                            for i in 0..d {
                                let v = out.get(row, base + i) + eg.get(i, j);
                                out.set(row, base + i, v);
                            }
                        }
                        if self.prod(g, h) == h0 {
                            let v = out.get(row, base + j) - BigInt::one();
                            out.set(row, base + j, v);
                        }
                        if g == h0 {
                            let v = out.get(row, base + j) + BigInt::one();
                            out.set(row, base + j, v);
                        }
                    }
                }
            }
        }
        out
    }
}

fn torsion_of_cokernel(rows: &IntegerMatrix) -> Result<InvariantFactors> {
    Ok(exactalg::lattice_quotient_invariants(rows, rows.cols())?.torsion())
}

fn check_cap(action: &LatticeAction, cap: usize, degree: u32) -> Result<()> {
    if action.order() > cap {
        return Err(Error::Resource(format!("H^{degree} limited to groups of order <= {cap}, got {}", action.order())));
    }
    Ok(())
}

pub fn h1_general(action: &LatticeAction) -> Result<InvariantFactors> {
    h1_general_with_cap(action, H1_ORDER_CAP)
}

pub fn h1_general_with_cap(action: &LatticeAction, cap: usize) -> Result<InvariantFactors> {
    check_cap(action, cap, 1)?;
    torsion_of_cokernel(&Cochains::new(action).d0())
}

pub fn h2_general(action: &LatticeAction) -> Result<InvariantFactors> {
    h2_general_with_cap(action, H2_ORDER_CAP)
}

pub fn h2_general_with_cap(action: &LatticeAction, cap: usize) -> Result<InvariantFactors> {
    check_cap(action, cap, 2)?;
    torsion_of_cokernel(&Cochains::new(action).d1())
}

/// `|φ| = |H¹(I, X^*(T))|` for a cyclic inertia action without invariants.
pub fn component_group_order(inertia: &IntegerMatrix) -> Result<BigInt> {
    let fixed = invariant_rank(inertia.rows(), std::slice::from_ref(inertia));
    if fixed > 0 {
        return Err(Error::Precondition(format!(
            "inertia fixes a rank-{fixed} sublattice: the torus has a split subtorus over the inertia field"
        )));
    }
    let h1 = h1_cyclic(inertia)?;
    let order = h1.torsion_order();
    debug_assert!(!order.is_zero());
    Ok(order)
}
