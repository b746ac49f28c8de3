//! Closed formula for the quasi-discriminant of a torus.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precise::Real;

/// `T_R = G_m^a × S^b × SO(2)^c`, conductor `a(T)` and the orders of the
/// component groups at the bad primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiDiscInputs {
    pub dim: usize,
    pub a_t: u64,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    #[serde(default)]
    pub component_orders: Vec<u64>,
}

impl QuasiDiscInputs {
    pub fn validate(&self) -> Result<()> {
        if self.a + 2 * self.b + self.c != self.dim {
            return Err(Error::Dimension(format!(
                "a + 2b + c = {} but the torus has dimension {}",
                self.a + 2 * self.b + self.c,
                self.dim
            )));
        }
        if self.a_t == 0 || self.component_orders.contains(&0) {
            return Err(Error::Parameter("conductor and component orders must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiDiscriminant {
    /// `a(T)`.
    #[serde(with = "crate::exactalg::bigint_serde")]
    pub numerator: BigInt,
    /// `2^{2a} · ∏ |φ_p|²`.
    #[serde(with = "crate::exactalg::bigint_serde")]
    pub integer_denominator: BigInt,
    /// Power of `2π` in the denominator, `2b + 2c`.
    pub two_pi_exponent: usize,
    pub value: Real,
}

/// `D_T = a(T) / (2^{2a} (2π)^{2b+2c} ∏ |φ_p|²)`.
pub fn quasi_discriminant(inputs: &QuasiDiscInputs, digits: u32) -> Result<QuasiDiscriminant> {
    inputs.validate()?;
    let mut denominator = BigInt::one() << (2 * inputs.a);
    for &phi in &inputs.component_orders {
        denominator *= BigInt::from(phi) * BigInt::from(phi);
    }
    let exponent = 2 * inputs.b + 2 * inputs.c;
    let two_pi = Real::pi(digits).mul_int(&BigInt::from(2));
    let mut value = Real::from_int(inputs.a_t, digits).div_int(&denominator)?;
    for _ in 0..exponent {
        value = value.div(&two_pi)?;
    }
    debug_assert!(!value.is_negative() && !denominator.is_zero());
    Ok(QuasiDiscriminant {
        numerator: BigInt::from(inputs.a_t),
        integer_denominator: denominator,
        two_pi_exponent: exponent,
        value,
    })
}
