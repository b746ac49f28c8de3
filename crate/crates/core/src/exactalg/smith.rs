//! Smith normal form by unimodular row and column operations.
//!
//! Elimination first runs on machine integers with checked arithmetic and
//! falls back to big integers the moment any intermediate overflows, so the
//! result is always exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;

/// `left * m * right = diag(invariants)` (padded with zeros), with `left` and
/// `right` unimodular and `right_inverse = right^{-1}`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub invariants: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inverse: IntegerMatrix,
}

/// Nonzero diagonal of the Smith form, `d_1 | d_2 | ... | d_r`, all positive.
/// Unit factors are kept.
pub fn smith_invariants(m: &IntegerMatrix) -> Vec<BigInt> {
    run(m, false).invariants
}

pub fn smith_decomposition(m: &IntegerMatrix) -> SmithDecomposition {
    let out = run(m, true);
    let (rows, cols) = (m.rows(), m.cols());
    SmithDecomposition {
        invariants: out.invariants,
        left: to_matrix(out.left.expect("transforms requested"), rows, rows),
        right: to_matrix(out.right.expect("transforms requested"), cols, cols),
        right_inverse: to_matrix(out.right_inverse.expect("transforms requested"), cols, cols),
    }
}

struct RawOutput {
    invariants: Vec<BigInt>,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    right_inverse: Option<Vec<Vec<BigInt>>>,
}

fn to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
    IntegerMatrix::new(r, c, rows.into_iter().flatten().collect()).expect("square transform")
}

fn run(m: &IntegerMatrix, transforms: bool) -> RawOutput {
    let small: Option<Vec<Vec<i64>>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_i64().filter(|v| *v != i64::MIN)).collect()).collect();
    if let Some(rows) = small {
        if let Some(out) = Elimination::<i64>::new(rows, m.cols(), transforms).run() {
            let widen = |x: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
                x.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
            };
            return RawOutput {
                invariants: out.invariants.into_iter().map(BigInt::from).collect(),
                left: out.left.map(widen),
                right: out.right.map(widen),
                right_inverse: out.right_inverse.map(widen),
            };
        }
    }
    let out = Elimination::<BigInt>::new(m.row_vecs(), m.cols(), transforms)
        .run()
        .expect("big-integer elimination cannot overflow");
    RawOutput { invariants: out.invariants, left: out.left, right: out.right, right_inverse: out.right_inverse }
}

/// Ring operations the elimination needs; `None` signals overflow.
trait Entry: Clone + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn abs_cmp_lt(&self, other: &Self) -> bool;
    fn quotient(&self, d: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn is_neg(&self) -> bool;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Entry for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quotient(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        let p = q.checked_mul(*b)?;
        let r = self.checked_sub(p)?;
        (r != i64::MIN).then_some(r)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Entry for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quotient(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

struct Output<T> {
    invariants: Vec<T>,
    left: Option<Vec<Vec<T>>>,
    right: Option<Vec<Vec<T>>>,
    right_inverse: Option<Vec<Vec<T>>>,
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    m: usize,
    n: usize,
    left: Option<Vec<Vec<T>>>,
    right: Option<Vec<Vec<T>>>,
    right_inverse: Option<Vec<Vec<T>>>,
}

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

/// `rows[i] -= q * rows[j]`
fn row_sub_mul<T: Entry>(rows: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    let (ri, rj) = pair_mut(rows, i, j);
    for (x, y) in ri.iter_mut().zip(rj.iter()) {
        if !y.is_nil() {
            *x = x.sub_mul(q, y)?;
        }
    }
    Some(())
}

/// column `i` -= q * column `j`
fn col_sub_mul<T: Entry>(rows: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    for r in rows.iter_mut() {
        if !r[j].is_nil() {
            let v = r[i].sub_mul(q, &r[j])?;
            r[i] = v;
        }
    }
    Some(())
}

fn pair_mut<T>(rows: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = rows.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

fn swap_cols<T>(rows: &mut [Vec<T>], i: usize, j: usize) {
    for r in rows.iter_mut() {
        r.swap(i, j);
    }
}

impl<T: Entry> Elimination<T> {
    fn new(a: Vec<Vec<T>>, n: usize, transforms: bool) -> Self {
        let m = a.len();
        Elimination {
            a,
            m,
            n,
            left: transforms.then(|| identity(m)),
            right: transforms.then(|| identity(n)),
            right_inverse: transforms.then(|| identity(n)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.left {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.right {
            swap_cols(v, i, j);
        }
        if let Some(w) = &mut self.right_inverse {
            w.swap(i, j);
        }
    }

    /// row i -= q * row j
    fn row_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        row_sub_mul(&mut self.a, i, j, q)?;
        if let Some(u) = &mut self.left {
            row_sub_mul(u, i, j, q)?;
        }
        Some(())
    }

    /// col i -= q * col j; the inverse transform gets row j += q * row i.
    fn col_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        col_sub_mul(&mut self.a, i, j, q)?;
        if let Some(v) = &mut self.right {
            col_sub_mul(v, i, j, q)?;
        }
        if let Some(w) = &mut self.right_inverse {
            let neg = q.neg()?;
            row_sub_mul(w, j, i, &neg)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for x in self.a[i].iter_mut() {
            *x = x.neg()?;
        }
        if let Some(u) = &mut self.left {
            for x in u[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_nil() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs_cmp_lt(&self.a[bi][bj]) {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Output<T>> {
        let mut invariants = Vec::new();
        let limit = self.m.min(self.n);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t)?;
                // Entries the pivot does not divide are folded into row t and reduced again.
                let offender = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !self.a[t][t].divides(&self.a[i][j])));
                match offender {
                    Some(i) => {
                        let one = T::unit().neg()?;
                        self.row_op(t, i, &one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_neg() {
                self.negate_row(t)?;
            }
            invariants.push(self.a[t][t].clone());
            t += 1;
        }
        Some(Output { invariants, left: self.left, right: self.right, right_inverse: self.right_inverse })
    }

    /// Zeroes row t and column t outside the pivot.
    fn clear_cross(&mut self, t: usize) -> Option<()> {
        loop {
            let mut residue = false;
            for i in t + 1..self.m {
                if !self.a[i][t].is_nil() {
                    let q = self.a[i][t].quotient(&self.a[t][t]);
                    if !q.is_nil() {
                        self.row_op(i, t, &q)?;
                    }
                    residue |= !self.a[i][t].is_nil();
                }
            }
            for j in t + 1..self.n {
                if !self.a[t][j].is_nil() {
                    let q = self.a[t][j].quotient(&self.a[t][t]);
                    if !q.is_nil() {
                        self.col_op(j, t, &q)?;
                    }
                    residue |= !self.a[t][j].is_nil();
                }
            }
            if !residue {
                return Some(());
            }
            // Bring the smallest leftover in row/column t onto the diagonal.
            let mut best: Option<(bool, usize)> = None;
            let mut best_val: Option<T> = None;
            for i in t + 1..self.m {
                let x = &self.a[i][t];
                if !x.is_nil() && best_val.as_ref().is_none_or(|b| x.abs_cmp_lt(b)) {
                    best = Some((true, i));
                    best_val = Some(x.clone());
                }
            }
            for j in t + 1..self.n {
                let x = &self.a[t][j];
                if !x.is_nil() && best_val.as_ref().is_none_or(|b| x.abs_cmp_lt(b)) {
                    best = Some((false, j));
                    best_val = Some(x.clone());
                }
            }
            match best {
                Some((true, i)) => self.swap_rows(t, i),
                Some((false, j)) => self.swap_cols(t, j),
                None => unreachable!("residue implies a nonzero entry"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_two_three() {
        let m = IntegerMatrix::from_i64(2, 2, &[2, 0, 0, 3]).unwrap();
        assert_eq!(smith_invariants(&m), ints(&[1, 6]));
    }

    #[test]
    fn empty_matrix() {
        let m = IntegerMatrix::zeros(0, 0);
        assert!(smith_invariants(&m).is_empty());
        let z = IntegerMatrix::zeros(3, 2);
        assert!(smith_invariants(&z).is_empty());
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_i64(2, 2, &[2, 4, 6, 8]).unwrap();
        assert_eq!(smith_invariants(&m), ints(&[2, 4]));
    }

    #[test]
    fn decomposition_reconstructs_diagonal() {
        let m = IntegerMatrix::from_i64(3, 4, &[4, 6, -2, 8, 10, 3, 7, 1, 0, 12, -6, 4]).unwrap();
        let sd = smith_decomposition(&m);
        let d = &(&sd.left * &m) * &sd.right;
        for i in 0..3 {
            for j in 0..4 {
                let expected =
                    if i == j && i < sd.invariants.len() { sd.invariants[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expected);
            }
        }
        assert!((&sd.right * &sd.right_inverse).is_identity());
        assert_eq!(sd.left.determinant().unwrap().magnitude(), BigInt::one().magnitude());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = IntegerMatrix::from_i64(2, 2, &[big, big - 1, big - 7, big - 2]).unwrap();
        let inv = smith_invariants(&m);
        let det = m.determinant().unwrap();
        let prod: BigInt = inv.iter().product();
        assert_eq!(prod, det.abs());
    }
}
