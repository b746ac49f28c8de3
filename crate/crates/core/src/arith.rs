//! Elementary arithmetic constants governing conductor lower bounds:
//! the weight of a cyclic order, `ψ(s)`, `λ(s)`, `α(s)` and `c(s)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_power_totient(p: u64, k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        (p - 1) * p.pow(k - 1)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().map(|(p, k)| prime_power_totient(p, k)).product()
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// `Σ_{p | n} φ(p^{v_p(n)}) − ε(n)` together with its parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightValue {
    pub n: u64,
    pub totient_sum: u64,
    pub epsilon: u8,
    pub weight: u64,
}

fn weight_from_factors(n: u64, factors: &[(u64, u32)]) -> WeightValue {
    let totient_sum: u64 = factors.iter().map(|&(p, k)| prime_power_totient(p, k)).sum();
    // ε(n) = 1 exactly when 2 || n and n ≠ 2.
    let two_exact = factors.first().is_some_and(|&(p, k)| p == 2 && k == 1);
    let epsilon = u8::from(two_exact && n != 2);
    WeightValue { n, totient_sum, epsilon, weight: totient_sum - u64::from(epsilon) }
}

pub fn weight(n: u64) -> Result<WeightValue> {
    if n == 0 {
        return Err(Error::Domain("weight is defined for n >= 1".into()));
    }
    Ok(weight_from_factors(n, &factorize(n)))
}

/// Largest `n` whose weight is at most `s`.
///
/// Every prime dividing such an `n` satisfies `p - 1 <= s + 1` and every prime
/// power `p^k` exactly dividing it has `φ(p^k) <= s + 1`, so a depth-first
/// search over those prime powers is exhaustive.
pub fn psi(s: u32) -> Result<u64> {
    if s == 0 {
        return Err(Error::Domain("psi is defined for s >= 1".into()));
    }
    let budget = u64::from(s) + 1;
    let mut powers: Vec<Vec<(u64, u32, u64)>> = Vec::new();
    for p in primes_up_to(budget + 1) {
        let mut opts = Vec::new();
        let mut k = 1;
        loop {
            let t = prime_power_totient(p, k);
            if t > budget {
                break;
            }
            opts.push((p.pow(k), k, t));
            k += 1;
        }
        powers.push(opts);
    }
    let mut best = 1u64;
    psi_search(&powers, 0, 1, 0, false, u64::from(s), &mut best);
    Ok(best)
}

fn psi_search(
    powers: &[Vec<(u64, u32, u64)>],
    idx: usize,
    n: u128,
    totient_sum: u64,
    two_exact: bool,
    s: u64,
    best: &mut u64,
) {
    if idx == powers.len() {
        let eps = u64::from(two_exact && n != 2);
        if totient_sum - eps <= s && n > u128::from(*best) {
            *best = u64::try_from(n).expect("psi fits in 64 bits for supported s");
        }
        return;
    }
    psi_search(powers, idx + 1, n, totient_sum, two_exact, s, best);
    for &(q, k, t) in &powers[idx] {
        let sum = totient_sum + t;
        if sum > s + 1 {
            break;
        }
        let two = if idx == 0 { k == 1 } else { two_exact };
        psi_search(powers, idx + 1, n * u128::from(q), sum, two, s, best);
    }
}

/// `λ(s)` as a reduced fraction, with `ψ(s)` and the smallest minimizing `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaConstant {
    pub s: u32,
    pub psi: u64,
    pub lambda_num: u64,
    pub lambda_den: u64,
    pub argmin: u64,
}

impl LambdaConstant {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.lambda_num, self.lambda_den)
    }

    pub fn big_ratio(&self) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(self.lambda_num), BigInt::from(self.lambda_den))
    }
}

/// Hand-computed reference values of `λ(s)` for `s <= 7` as they circulate in the
/// literature. Entries for `s = 6, 7` disagree with the defining minimum.
pub const REFERENCE_LAMBDA: [(u32, u64, u64); 7] =
    [(1, 1, 1), (2, 2, 5), (3, 2, 5), (4, 4, 11), (5, 4, 11), (6, 1, 5), (7, 1, 5)];

/// Minimum of `weight(n) / (n - 1)` over `2 <= n <= ψ(s)`.
pub fn lambda_const(s: u32) -> Result<LambdaConstant> {
    let psi_s = psi(s)?;
    let limit = usize::try_from(psi_s).map_err(|_| Error::Resource("psi(s) too large to scan".into()))?;
    let spf = smallest_prime_factors(limit);
    let (mut num, mut den, mut argmin) = (u64::MAX, 1u64, 0u64);
    for n in 2..=psi_s {
        let w = weight_from_factors(n, &factor_with_sieve(n, &spf)).weight;
        // w / (n-1) < num / den
        if argmin == 0 || u128::from(w) * u128::from(den) < u128::from(num) * u128::from(n - 1) {
            num = w;
            den = n - 1;
            argmin = n;
        }
    }
    let g = num.gcd(&den);
    Ok(LambdaConstant { s, psi: psi_s, lambda_num: num / g, lambda_den: den / g, argmin })
}

fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn factor_with_sieve(mut n: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = u64::from(spf[n as usize]);
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        out.push((p, k));
    }
    out
}

/// `α(s)`: the maximal order of a finite subgroup of `GL_s(Q)`.
///
/// Defaults to the signed-permutation order `2^s · s!`, which is always attained;
/// larger literature values are supplied as overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTable {
    overrides: BTreeMap<u32, AlphaOverride>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaOverride {
    pub value: u64,
    /// Marks a value taken from the literature that is allowed to sit below the
    /// signed-permutation order.
    #[serde(default)]
    pub literature: bool,
}

impl AlphaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn default_rule(s: u32) -> BigUint {
        let fact: BigUint = (1..=s).map(BigUint::from).product();
        (BigUint::one() << s) * fact
    }

    pub fn set_override(&mut self, s: u32, entry: AlphaOverride) -> Result<()> {
        if s == 0 || entry.value == 0 {
            return Err(Error::Parameter("alpha overrides need s >= 1 and a positive value".into()));
        }
        if !entry.literature && BigUint::from(entry.value) < Self::default_rule(s) {
            return Err(Error::Parameter(format!(
                "alpha({s}) = {} is below 2^s*s! = {}; flag it as a literature value to accept it",
                entry.value,
                Self::default_rule(s)
            )));
        }
        self.overrides.insert(s, entry);
        Ok(())
    }

    pub fn overrides(&self) -> &BTreeMap<u32, AlphaOverride> {
        &self.overrides
    }

    pub fn alpha(&self, s: u32) -> BigUint {
        match self.overrides.get(&s) {
            Some(o) => BigUint::from(o.value),
            None => Self::default_rule(s),
        }
    }
}

/// `c(s) = ∏_{p <= s+1} p^{-α(s)^2}`, kept in factored form since the exponent
/// is astronomically large beyond the first few `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CConstant {
    pub s: u32,
    #[serde(serialize_with = "as_decimal")]
    pub alpha: BigUint,
    pub primes: Vec<u64>,
    #[serde(serialize_with = "as_decimal")]
    pub exponent: BigUint,
}

fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Largest denominator, in bits, that `CConstant::to_ratio` will materialize.
pub const MAX_EXACT_BITS: u64 = 1 << 22;

impl CConstant {
    pub fn log10(&self) -> f64 {
        let e = self.exponent.to_f64().unwrap_or(f64::INFINITY);
        -e * self.primes.iter().map(|&p| (p as f64).log10()).sum::<f64>()
    }

    pub fn denominator_bits(&self) -> f64 {
        let e = self.exponent.to_f64().unwrap_or(f64::INFINITY);
        e * self.primes.iter().map(|&p| (p as f64).log2()).sum::<f64>()
    }

    pub fn to_ratio(&self) -> Result<Ratio<BigInt>> {
        if self.denominator_bits() > MAX_EXACT_BITS as f64 {
            return Err(Error::Resource(format!(
                "c({}) has a denominator of about {:.3e} bits",
                self.s,
                self.denominator_bits()
            )));
        }
        let e = self.exponent.to_u32().expect("bounded by the bit check");
        let den: BigInt = self.primes.iter().map(|&p| num_traits::pow(BigInt::from(p), e as usize)).product();
        Ok(Ratio::new(BigInt::one(), den))
    }
}

pub fn c_const(s: u32, table: &AlphaTable) -> Result<CConstant> {
    if s == 0 {
        return Err(Error::Domain("c(s) is defined for s >= 1".into()));
    }
    let alpha = table.alpha(s);
    let exponent = &alpha * &alpha;
    Ok(CConstant { s, alpha, primes: primes_up_to(u64::from(s) + 1), exponent })
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, k) in factorize(n) {
        let current = ds.clone();
        let mut q = 1;
        for _ in 0..k {
            q *= p;
            ds.extend(current.iter().map(|d| d * q));
        }
    }
    ds.sort_unstable();
    ds
}

/// Minimum of `Σ φ(d_i)` over sets of divisors `d_i > 1` of `n` with `lcm = n`,
/// i.e. the fewest nontrivial characters a faithful rational representation of
/// `Z/n` can carry. Dynamic programming keyed on the achieved lcm.
pub fn min_faithful_char_count(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain("min_faithful_char_count needs n >= 2".into()));
    }
    let mut best: BTreeMap<u64, u64> = BTreeMap::new();
    best.insert(1, 0);
    for d in divisors(n).into_iter().filter(|&d| d > 1) {
        let phi = euler_phi(d);
        let snapshot: Vec<(u64, u64)> = best.iter().map(|(&l, &c)| (l, c)).collect();
        for (l, c) in snapshot {
            let nl = l.lcm(&d);
            let nc = c + phi;
            let slot = best.entry(nl).or_insert(u64::MAX);
            if nc < *slot {
                *slot = nc;
            }
        }
    }
    Ok(best[&n])
}

/// Exact `λ(s)` as a big rational.
pub fn lambda_ratio(s: u32) -> Result<Ratio<BigInt>> {
    Ok(lambda_const(s)?.big_ratio())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Scan bound: weight(n) <= s forces n <= e^{2(s+1)/e}.
    fn naive_bound(s: u32) -> u64 {
        (2.0 * f64::from(s + 1) / std::f64::consts::E).exp().floor() as u64
    }

    fn naive_weight(n: u64) -> u64 {
        let mut m = n;
        let mut sum = 0;
        let mut two_exact = false;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut pk = 1;
                while m.is_multiple_of(p) {
                    m /= p;
                    pk *= p;
                }
                sum += pk - pk / p;
                if p == 2 && pk == 2 {
                    two_exact = true;
                }
            }
            p += 1;
        }
        sum - u64::from(two_exact && n != 2)
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(2).unwrap().weight, 1);
        assert_eq!(weight(6).unwrap().weight, 2);
        assert_eq!(weight(6).unwrap().epsilon, 1);
        assert_eq!(weight(12).unwrap().weight, 4);
        assert_eq!(weight(1).unwrap().weight, 0);
        assert!(weight(0).is_err());
    }

    #[test]
    fn weight_parity() {
        for n in 3..2000 {
            assert_eq!(weight(n).unwrap().weight % 2, 0, "n = {n}");
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1).unwrap(), 2);
        assert_eq!(psi(2).unwrap(), 6);
        assert_eq!(psi(4).unwrap(), 12);
        assert!(psi(0).is_err());
    }

    #[test]
    fn psi_and_lambda_match_naive_scan() {
        for s in 1..=12u32 {
            let bound = naive_bound(s);
            let naive_psi = (1..=bound).filter(|&n| naive_weight(n) <= u64::from(s)).max().unwrap();
            assert_eq!(psi(s).unwrap(), naive_psi, "psi({s})");
            let mut best = Ratio::new(u64::MAX, 1);
            for n in 2..=naive_psi {
                best = best.min(Ratio::new(naive_weight(n), n - 1));
            }
            assert_eq!(lambda_const(s).unwrap().ratio(), best, "lambda({s})");
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_const(1).unwrap().ratio(), Ratio::new(1, 1));
        assert_eq!(lambda_const(2).unwrap().ratio(), Ratio::new(2, 5));
        assert_eq!(lambda_const(3).unwrap().ratio(), Ratio::new(2, 5));
        assert_eq!(lambda_const(4).unwrap().ratio(), Ratio::new(4, 11));
        assert_eq!(lambda_const(5).unwrap().ratio(), Ratio::new(4, 11));
        let l6 = lambda_const(6).unwrap();
        assert_eq!((l6.psi, l6.ratio()), (30, Ratio::new(6, 29)));
        assert_eq!(lambda_const(7).unwrap().ratio(), l6.ratio());
    }

    #[test]
    fn c_constant_examples() {
        let table = AlphaTable::new();
        let c1 = c_const(1, &table).unwrap();
        assert_eq!(c1.alpha, BigUint::from(2u32));
        assert_eq!(c1.to_ratio().unwrap(), Ratio::new(BigInt::one(), BigInt::from(16)));

        let c2 = c_const(2, &table).unwrap();
        assert_eq!(c2.alpha, BigUint::from(8u32));
        assert_eq!(c2.primes, vec![2, 3]);
        let expect = Ratio::new(BigInt::one(), num_traits::pow(BigInt::from(6), 64));
        assert_eq!(c2.to_ratio().unwrap(), expect);

        let c3 = c_const(3, &table).unwrap();
        assert_eq!(c3.alpha, BigUint::from(48u32));
        assert_eq!(c3.exponent, BigUint::from(2304u32));
        assert_eq!(c3.primes, vec![2, 3]);

        assert!(c_const(8, &table).unwrap().to_ratio().is_err());
    }

    #[test]
    fn alpha_overrides() {
        let mut table = AlphaTable::new();
        table.set_override(2, AlphaOverride { value: 12, literature: true }).unwrap();
        assert_eq!(table.alpha(2), BigUint::from(12u32));
        assert!(table.set_override(3, AlphaOverride { value: 10, literature: false }).is_err());
        assert!(table.set_override(3, AlphaOverride { value: 10, literature: true }).is_ok());
    }

    #[test]
    fn faithful_count_examples() {
        assert_eq!(min_faithful_char_count(6).unwrap(), 2);
        assert_eq!(min_faithful_char_count(12).unwrap(), 4);
        assert_eq!(min_faithful_char_count(2).unwrap(), 1);
        assert!(min_faithful_char_count(1).is_err());
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
