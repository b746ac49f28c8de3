//! Galois action on `X_*(GU_E)` in the basis `(μ, e_1, …, e_g)`.

use num_bigint::BigInt;

use crate::cmgroup::SignedPermutation;
use crate::exactalg::IntegerMatrix;

/// Matrix (acting on column vectors) of the point map `j ↦ act(j, x)`:
/// `e_i ↦ ±e_{|x(i)|}` and `μ ↦ μ - Σ_{x(i) < 0} e_{|x(i)|}`.
///
/// With the right action this is an anti-homomorphism:
/// `M(x·y) = M(y)·M(x)`.
pub fn cochar_action(x: &SignedPermutation) -> IntegerMatrix {
    let g = x.degree();
    let mut m = IntegerMatrix::zeros(g + 1, g + 1);
    m.set(0, 0, BigInt::from(1));
    for (i, &p) in x.images().iter().enumerate() {
        let k = p.unsigned_abs() as usize;
        m.set(k, i + 1, BigInt::from(p.signum()));
        if p < 0 {
            m.set(k, 0, BigInt::from(-1));
        }
    }
    m
}

/// `x ↦ M(x⁻¹)`, a homomorphism for the product [`SignedPermutation::then`].
pub fn cochar_left_action(x: &SignedPermutation) -> IntegerMatrix {
    cochar_action(&x.inverse())
}
