//! Imaginary quadratic class numbers by two independent routes, the class
//! number formula of the norm torus, and the explicit part of orbit bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{factorize, lambda_const};
use crate::error::{Error, Result};
use crate::precise::{serialize_ratio as ratio_string, Real};

/// Largest `|D|` handled by the linear-time routines.
pub const MAX_ABS_DISCRIMINANT: i64 = 10_000_000;

/// Rounding residual above which [`class_number_iq`] refuses to round.
pub const ROUNDING_TOLERANCE_DIGITS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    /// Accepts negative fundamental discriminants; the error names the first
    /// condition that fails.
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::Domain(format!("D = {d} is not negative")));
        }
        if -d > MAX_ABS_DISCRIMINANT {
            return Err(Error::Resource(format!("|D| = {} exceeds {MAX_ABS_DISCRIMINANT}", -d)));
        }
        let squarefree = |n: i64| factorize(n as u64).iter().all(|&(_, e)| e == 1);
        match d.rem_euclid(4) {
            1 => {
                if !squarefree(-d) {
                    return Err(Error::Domain(format!("D = {d} ≡ 1 mod 4 but |D| is not squarefree")));
                }
            }
            0 => {
                let m = d / 4;
                if !matches!(m.rem_euclid(4), 2 | 3) {
                    return Err(Error::Domain(format!("D = {d} ≡ 0 mod 4 but D/4 is not ≡ 2, 3 mod 4")));
                }
                if !squarefree(-m) {
                    return Err(Error::Domain(format!("D = {d} ≡ 0 mod 4 but D/4 is not squarefree")));
                }
            }
            _ => return Err(Error::Domain(format!("D = {d} is not ≡ 0 or 1 mod 4"))),
        }
        Ok(FundamentalDiscriminant(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Number of roots of unity in `Q(√D)`.
    pub fn units(self) -> u32 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

/// Kronecker symbol `(d / n)` for `n ≥ 0`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return i32::from(d == 1 || d == -1);
    }
    let mut n = n;
    let mut result = 1i32;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        // (d/2) = 1 for d ≡ ±1 mod 8, −1 for d ≡ ±3 mod 8.
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // Jacobi symbol (d mod n / n) for odd n.
    let mut a = d.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `L(1, χ_D) = −π |D|^{-3/2} Σ_{a=1}^{|D|-1} χ_D(a) a`.
pub fn dirichlet_l1(d: FundamentalDiscriminant, digits: u32) -> Result<Real> {
    let n = d.0.unsigned_abs();
    let sum: i64 = (1..n).map(|a| i64::from(kronecker(d.0, a)) * a as i64).sum();
    let abs_d = Real::from_int(n, digits);
    let scale = abs_d.mul(&abs_d.sqrt()?);
    Real::pi(digits).mul_int(&BigInt::from(-sum)).div(&scale)
}

/// Reduced primitive forms `(a, b, c)` with `b² − 4ac = D`, `|b| ≤ a ≤ c`
/// and `b ≥ 0` when `|b| = a` or `a = c`.
pub fn reduced_form_count(d: FundamentalDiscriminant) -> u64 {
    let n = -d.0;
    let mut count = 0;
    let mut a = 1i64;
    // a ≤ √(|D|/3) for reduced forms.
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (b < 0 && a == c) || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// `h = w √|D| L(1, χ_D) / (2π)`, rounded after checking the residual.
pub fn class_number_iq(d: FundamentalDiscriminant, digits: u32) -> Result<u64> {
    let approx = class_number_real(d, digits)?;
    let (h, residual) = approx.round();
    if !residual.below_ten_pow(ROUNDING_TOLERANCE_DIGITS) {
        return Err(Error::Precision(format!("class number estimate {approx} is not within 1e-10 of an integer")));
    }
    u64::try_from(h).map_err(|_| Error::Precision("negative class number estimate".into()))
}

fn class_number_real(d: FundamentalDiscriminant, digits: u32) -> Result<Real> {
    let l1 = dirichlet_l1(d, digits)?;
    let two_pi = Real::pi(digits).mul_int(&BigInt::from(2));
    let root = Real::from_int(d.0.unsigned_abs(), digits).sqrt()?;
    l1.mul(&root).mul_int(&BigInt::from(d.units())).div(&two_pi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShyrReport {
    pub discriminant: FundamentalDiscriminant,
    pub w: u32,
    pub l1: Real,
    pub h_dirichlet: u64,
    pub h_forms: u64,
    /// `D_T = |D| / (2π)²`.
    pub d_t_numerator: u64,
    pub d_t_two_pi_exponent: u32,
    pub d_t: Real,
    /// `w · τ · ρ · √D_T` with `τ = R = 1` and `ρ = L(1, χ_D)`.
    pub shyr_h: Real,
    pub consistent: bool,
}

/// Class number of the norm-one torus route against both direct oracles.
pub fn shyr_consistency(d: FundamentalDiscriminant, digits: u32) -> Result<ShyrReport> {
    let l1 = dirichlet_l1(d, digits)?;
    let h_dirichlet = class_number_iq(d, digits)?;
    let h_forms = reduced_form_count(d);
    let n = d.0.unsigned_abs();
    let two_pi = Real::pi(digits).mul_int(&BigInt::from(2));
    let d_t = Real::from_int(n, digits).div(&two_pi.mul(&two_pi))?;
    let shyr_h = l1.mul(&d_t.sqrt()?).mul_int(&BigInt::from(d.units()));
    let gap = shyr_h.sub(&Real::from_int(h_forms, digits)).abs();
    Ok(ShyrReport {
        discriminant: d,
        w: d.units(),
        consistent: h_dirichlet == h_forms && gap.below_ten_pow(ROUNDING_TOLERANCE_DIGITS),
        l1,
        h_dirichlet,
        h_forms,
        d_t_numerator: n,
        d_t_two_pi_exponent: 2,
        d_t,
        shyr_h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub d: u32,
    pub d_l: BigInt,
    pub eps: BigRational,
    pub i_t: u32,
    pub index_ratio: BigInt,
    pub b: BigRational,
    pub c: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitBound {
    #[serde(serialize_with = "ratio_string")]
    pub lambda: BigRational,
    /// `λ(d)/2 − ε`.
    #[serde(serialize_with = "ratio_string")]
    pub exponent: BigRational,
    pub value: Real,
    /// The exponent is not positive, so the bound says nothing as `D_L` grows.
    pub vacuous: bool,
    pub conditional_on_user_constants: bool,
}

/// `c · B^{i_T} · index · D_L^{λ(d)/2 − ε}`.
pub fn orbit_bound(inputs: &BoundInputs, digits: u32) -> Result<OrbitBound> {
    let positive = |x: &BigRational| x.is_positive();
    if inputs.d == 0
        || !inputs.d_l.is_positive()
        || !positive(&inputs.eps)
        || !inputs.index_ratio.is_positive()
        || !positive(&inputs.b)
        || !positive(&inputs.c)
    {
        return Err(Error::Parameter("orbit bound parameters must be positive".into()));
    }
    let lambda = lambda_const(inputs.d)?.big_ratio();
    let exponent = &lambda / BigRational::from_integer(BigInt::from(2)) - &inputs.eps;
    let d_l = Real::from_int(inputs.d_l.clone(), digits);
    let mut factor = inputs.c.clone() * BigRational::from_integer(inputs.index_ratio.clone());
    factor *= num_traits::pow(inputs.b.clone(), inputs.i_t as usize);
    let value = Real::from_ratio(&factor, digits).mul(&d_l.pow_ratio(&exponent)?);
    Ok(OrbitBound { vacuous: !exponent.is_positive(), lambda, exponent, value, conditional_on_user_constants: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    #[test]
    fn discriminant_validation() {
        for d in [-3, -4, -7, -8, -15, -20, -23, -24, -163] {
            assert!(FundamentalDiscriminant::new(d).is_ok(), "{d}");
        }
        for (d, needle) in
            [(5, "negative"), (-1, "0 or 1"), (-12, "2, 3"), (-16, "2, 3"), (-27, "squarefree"), (-72, "squarefree")]
        {
            let err = FundamentalDiscriminant::new(d).unwrap_err().to_string();
            assert!(err.contains(needle), "{d}: {err}");
        }
    }

    #[test]
    fn kronecker_values() {
        // Brute-force Legendre symbols for odd primes via Euler's criterion.
        for p in [3u64, 5, 7, 11, 13] {
            for d in -30i64..30 {
                let a = d.rem_euclid(p as i64) as u64;
                let e = (0..(p - 1) / 2).fold(1u64, |acc, _| acc * a % p);
                let expected = if a == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p), expected, "({d}/{p})");
            }
        }
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn l_values() {
        let pi = Real::pi(50);
        let l4 = dirichlet_l1(fd(-4), 50).unwrap();
        assert!(l4.sub(&pi.div_int(&BigInt::from(4)).unwrap()).abs().below_ten_pow(45));
        let l3 = dirichlet_l1(fd(-3), 50).unwrap();
        let expected = pi.div(&Real::from_int(27, 50).sqrt().unwrap()).unwrap();
        assert!(l3.sub(&expected).abs().below_ten_pow(45));
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-3, 1), (-4, 1), (-15, 2), (-20, 2), (-23, 3), (-163, 1), (-47, 5), (-71, 7)] {
            assert_eq!(reduced_form_count(fd(d)), h, "forms {d}");
            assert_eq!(class_number_iq(fd(d), 50).unwrap(), h, "L {d}");
            assert!(shyr_consistency(fd(d), 50).unwrap().consistent);
        }
    }

    fn bound(d: u32, d_l: i64, eps: (i64, i64), i_t: u32, b: i64) -> OrbitBound {
        orbit_bound(
            &BoundInputs {
                d,
                d_l: d_l.into(),
                eps: BigRational::new(eps.0.into(), eps.1.into()),
                i_t,
                index_ratio: BigInt::one(),
                b: BigRational::from_integer(b.into()),
                c: BigRational::one(),
            },
            40,
        )
        .unwrap()
    }

    #[test]
    fn orbit_bound_examples() {
        let r = bound(1, 4, (1, 4), 0, 1);
        assert_eq!(r.value.to_decimal(30), Real::from_int(2, 40).sqrt().unwrap().to_decimal(30));
        let r = bound(2, 1000, (1, 100), 0, 1);
        assert_eq!(r.exponent, BigRational::new(19.into(), 100.into()));
        let base = bound(2, 1000, (1, 100), 0, 2);
        let cubed = bound(2, 1000, (1, 100), 3, 2);
        let ratio = cubed.value.div(&base.value).unwrap();
        assert!(ratio.sub(&Real::from_int(8, 40)).abs().below_ten_pow(30));
        assert!(bound(2, 1000, (1, 2), 0, 1).vacuous);
    }
}
