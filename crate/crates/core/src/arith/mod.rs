//! Exact integer and rational arithmetic: S-parts, valuations, factorization,
//! greatest prime factors and perfect powers.

mod factor;
mod prime;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factor::{factorize, FactorBudget, FactorMap};
pub use prime::{is_prime, is_prime_u64, primality_limit, small_primes, TRIAL_BOUND};

pub(crate) use factor::exact_root;
pub(crate) use prime::{mul_mod, pow_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero has no factorization or valuation")]
    Zero,
    #[error("{0} is outside the deterministic primality range")]
    PrimalityRange(BigUint),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime set must be nonempty")]
    EmptyPrimeSet,
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("input {0} is outside the operation's domain")]
    Domain(BigInt),
    #[error("factorization budget exhausted; unfactored part {unfactored}")]
    BudgetExhausted {
        largest_found: Option<BigUint>,
        unfactored: BigUint,
    },
}

/// A finite nonempty set of distinct primes, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, ArithError> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(ArithError::EmptyPrimeSet);
        }
        primes.sort_unstable();
        for w in primes.windows(2) {
            if w[0] == w[1] {
                return Err(ArithError::DuplicatePrime(w[0]));
            }
        }
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(ArithError::NotPrime(bad));
        }
        Ok(PrimeSet(primes))
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|&p| !other.contains(p))
    }

    /// ℓ₁ ⋯ ℓ_s
    pub fn product(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &p| acc * p)
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = ArithError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.0
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `n = cofactor · ∏ ℓᵢ^{rᵢ}` with the cofactor coprime to every ℓᵢ.
///
/// The sign of `n` stays on the cofactor. For `n = 0` everything is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPartDecomposition {
    pub n: BigInt,
    pub s_part: BigUint,
    pub cofactor: BigInt,
    pub exponents: Vec<u32>,
}

impl SPartDecomposition {
    pub fn reconstruct(&self) -> BigInt {
        &self.cofactor * BigInt::from(self.s_part.clone())
    }

    /// `log [n]_S / log |n|`, undefined for `|n| ≤ 1`.
    pub fn exponent(&self) -> Option<f64> {
        let m = self.n.magnitude();
        if m <= &BigUint::one() {
            return None;
        }
        Some(ln_biguint(&self.s_part) / ln_biguint(m))
    }
}

/// `[n]_S` by repeated exact division; `[0]_S = 0`.
pub fn s_part(n: &BigInt, primes: &PrimeSet) -> SPartDecomposition {
    let s = primes.len();
    if n.is_zero() {
        return SPartDecomposition {
            n: n.clone(),
            s_part: BigUint::zero(),
            cofactor: BigInt::zero(),
            exponents: vec![0; s],
        };
    }
    let mut rest = n.magnitude().clone();
    let mut part = BigUint::one();
    let mut exponents = Vec::with_capacity(s);
    for &p in primes.primes() {
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            part *= BigUint::from(p).pow(e);
        }
        exponents.push(e);
    }
    let sign = if n.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    SPartDecomposition {
        n: n.clone(),
        s_part: part,
        cofactor: BigInt::from_biguint(sign, rest),
        exponents,
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn v_p_int(p: u64, n: &BigInt) -> Result<u32, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut m = n.magnitude().clone();
    let p = BigUint::from(p);
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(r) = v_p(num) − v_p(den)`.
pub fn v_p_rational(p: u64, r: &BigRational) -> Result<i64, ArithError> {
    if r.is_zero() {
        return Err(ArithError::Zero);
    }
    Ok(v_p_int(p, r.numer())? as i64 - v_p_int(p, r.denom())? as i64)
}

/// Largest prime dividing `n`. A partial factorization is an error, never a
/// guess.
pub fn greatest_prime_factor(n: &BigInt, budget: &FactorBudget) -> Result<BigUint, ArithError> {
    if n.magnitude() < &BigUint::from(2u32) {
        return Err(ArithError::Domain(n.clone()));
    }
    let map = factorize(n, budget)?;
    if !map.is_complete() {
        return Err(ArithError::BudgetExhausted {
            largest_found: map.largest_prime().cloned(),
            unfactored: map.unfactored().clone(),
        });
    }
    Ok(map
        .largest_prime()
        .cloned()
        .expect("|n| >= 2 has a prime factor"))
}

/// `n = y^q` with `q` maximal (so `q = 1` exactly when `n` is not a power).
pub fn perfect_power_split(n: &BigUint) -> Result<(BigUint, u32), ArithError> {
    if n < &BigUint::from(2u32) {
        return Err(ArithError::Domain(BigInt::from(n.clone())));
    }
    let max_q = (n.bits() - 1) as u32;
    for q in (2..=max_q).rev() {
        if let Some(y) = exact_root(n, q) {
            return Ok((y, q));
        }
    }
    Ok((n.clone(), 1))
}

/// Natural logarithm of a positive big integer, to double precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_bigint_abs(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// Weil height of a rational in lowest terms: `log max(|r|, s)`.
pub fn rational_height(r: &BigRational) -> f64 {
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    if num.is_zero() {
        return 0.0;
    }
    ln_biguint(num.max(den))
}

/// True when every prime in numerator and denominator lies in `primes`.
pub fn is_s_unit(r: &BigRational, primes: &PrimeSet) -> bool {
    if r.is_zero() {
        return false;
    }
    s_part(r.numer(), primes).cofactor.abs().is_one()
        && s_part(r.denom(), primes).cofactor.abs().is_one()
}
