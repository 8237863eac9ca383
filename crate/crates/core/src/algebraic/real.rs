use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enclosure::{round_half_even, Enclosure};
use super::quadratic::QuadElem;
use super::AlgebraicError;

/// Relative accuracy demanded of distance enclosures, in bits.
const RELATIVE_BITS: u64 = 40;

/// Fractional-bit schedule for enclosure refinement: start, double, give up
/// past the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionPolicy {
    pub start_bits: u64,
    pub max_bits: u64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 64,
            max_bits: 1 << 20,
        }
    }
}

impl PrecisionPolicy {
    /// Call `f` at 64, 128, … bits until it returns `Some`.
    pub fn refine<T>(&self, mut f: impl FnMut(u64) -> Option<T>) -> Result<T, AlgebraicError> {
        let mut bits = self.start_bits.max(1);
        loop {
            if let Some(t) = f(bits) {
                return Ok(t);
            }
            if bits >= self.max_bits {
                return Err(AlgebraicError::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(self.max_bits);
        }
    }
}

/// Positive real `radicand^(1/degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radical {
    radicand: BigUint,
    degree: u32,
}

impl Radical {
    pub fn new(radicand: BigUint, degree: u32) -> Self {
        assert!(degree >= 1);
        Radical { radicand, degree }
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn as_integer(&self) -> Option<BigUint> {
        let r = self.radicand.nth_root(self.degree);
        (r.pow(self.degree) == self.radicand).then_some(r)
    }

    pub fn floor(&self) -> BigUint {
        self.radicand.nth_root(self.degree)
    }

    /// Exact: `x ≥ k + 1/2` iff `2^d·m ≥ (2k + 1)^d`, and equality is
    /// impossible by parity.
    pub fn nearest_integer(&self) -> BigUint {
        let k = self.floor();
        let lhs = &self.radicand << self.degree as usize;
        let rhs = (&k * 2u32 + 1u32).pow(self.degree);
        if lhs >= rhs {
            k + 1u32
        } else {
            k
        }
    }

    pub fn enclosure(&self, bits: u64) -> Enclosure {
        let shifted = &self.radicand << (bits * self.degree as u64);
        let r = shifted.nth_root(self.degree);
        let exact = r.pow(self.degree) == shifted;
        let lo = BigInt::from(r);
        let hi = if exact { lo.clone() } else { &lo + 1 };
        Enclosure::new(lo, hi, bits)
    }

    pub fn pow(&self, n: u32) -> Self {
        Radical::new(self.radicand.pow(n), self.degree)
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        Radical::new(&self.radicand * k.pow(self.degree), self.degree)
    }
}

/// Exactly represented real number from one of the supported classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactReal {
    Rational(BigRational),
    Quadratic(QuadElem),
    Radical(Radical),
}

/// `‖x‖`: exact for rationals, otherwise the certified nearest integer and an
/// enclosure of `|x − nearest|` that excludes zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance {
    Exact(BigRational),
    Certified {
        nearest: BigInt,
        enclosure: Enclosure,
    },
}

impl Distance {
    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Exact(r) if r.is_zero())
    }

    /// Bounds on `ln ‖x‖`; `None` when the distance is zero.
    pub fn ln_bounds(&self) -> Option<(f64, f64)> {
        match self {
            Distance::Exact(r) if r.is_zero() => None,
            Distance::Exact(r) => {
                let v =
                    crate::arith::ln_bigint_abs(r.numer()) - crate::arith::ln_bigint_abs(r.denom());
                Some((v, v))
            }
            Distance::Certified { enclosure, .. } => {
                Some((enclosure.ln_lower()?, enclosure.ln_upper()?))
            }
        }
    }

    pub fn ln(&self) -> Option<f64> {
        self.ln_bounds().map(|(lo, hi)| 0.5 * (lo + hi))
    }

    pub fn lower(&self) -> BigRational {
        match self {
            Distance::Exact(r) => r.clone(),
            Distance::Certified { enclosure, .. } => enclosure.lower(),
        }
    }

    pub fn upper(&self) -> BigRational {
        match self {
            Distance::Exact(r) => r.clone(),
            Distance::Certified { enclosure, .. } => enclosure.upper(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().map(f64::exp).unwrap_or(0.0)
    }
}

/// A non-negative quantity known exactly or through a certified enclosure
/// that excludes zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Magnitude {
    Exact(BigRational),
    Enclosed(Enclosure),
}

impl Magnitude {
    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Exact(r) if r.is_zero())
    }

    /// Bounds on the natural log; `None` for zero.
    pub fn ln_bounds(&self) -> Option<(f64, f64)> {
        match self {
            Magnitude::Exact(r) if r.is_zero() => None,
            Magnitude::Exact(r) => {
                let v =
                    crate::arith::ln_bigint_abs(r.numer()) - crate::arith::ln_bigint_abs(r.denom());
                Some((v, v))
            }
            Magnitude::Enclosed(e) => Some((e.ln_lower()?, e.ln_upper()?)),
        }
    }

    pub fn lower(&self) -> BigRational {
        match self {
            Magnitude::Exact(r) => r.clone(),
            Magnitude::Enclosed(e) => e.lower(),
        }
    }

    pub fn upper(&self) -> BigRational {
        match self {
            Magnitude::Exact(r) => r.clone(),
            Magnitude::Enclosed(e) => e.upper(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ln_bounds()
            .map(|(a, b)| (0.5 * (a + b)).exp())
            .unwrap_or(0.0)
    }
}

impl From<Distance> for Magnitude {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Exact(r) => Magnitude::Exact(r),
            Distance::Certified { enclosure, .. } => Magnitude::Enclosed(enclosure),
        }
    }
}

/// Shrink an enclosure of a nonzero quantity until it excludes zero and has
/// about 40 relative bits.
fn relatively_tight(e: Enclosure) -> Option<Enclosure> {
    let lo = e.lower_scaled();
    if !lo.is_positive() {
        return None;
    }
    let width = e.upper_scaled() - lo;
    ((width << RELATIVE_BITS) <= *lo).then_some(e)
}

impl ExactReal {
    /// Collapse a quadratic element with zero surd part to a rational.
    pub fn from_elem(e: QuadElem) -> Self {
        if e.is_rational() {
            ExactReal::Rational(e.rational_part().clone())
        } else {
            ExactReal::Quadratic(e)
        }
    }

    pub fn enclosure(&self, bits: u64) -> Enclosure {
        match self {
            ExactReal::Rational(r) => Enclosure::from_rational(r, bits),
            ExactReal::Quadratic(q) => q.enclosure(bits),
            ExactReal::Radical(r) => r.enclosure(bits),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ExactReal::Rational(r) => Some(r.clone()),
            ExactReal::Quadratic(_) => None,
            ExactReal::Radical(r) => r.as_integer().map(|n| BigRational::from_integer(n.into())),
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn floor(&self) -> BigInt {
        match self {
            ExactReal::Rational(r) => r.floor().to_integer(),
            ExactReal::Quadratic(q) => q.floor(),
            ExactReal::Radical(r) => r.floor().into(),
        }
    }

    /// Nearest integer, exact in every class; rational ties round half to even.
    pub fn nearest_integer(&self) -> BigInt {
        match self {
            ExactReal::Rational(r) => round_half_even(r.numer(), r.denom()),
            ExactReal::Quadratic(q) => q.nearest_integer(),
            ExactReal::Radical(r) => r.nearest_integer().into(),
        }
    }

    pub fn sign(&self) -> Ordering {
        match self {
            ExactReal::Rational(r) => r.cmp(&BigRational::zero()),
            ExactReal::Quadratic(q) => q.sign(),
            ExactReal::Radical(r) => r.radicand().cmp(&BigUint::zero()),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(num_traits::Pow::pow(r, n)),
            ExactReal::Quadratic(q) => ExactReal::from_elem(q.pow(n)),
            ExactReal::Radical(r) => ExactReal::Radical(r.pow(n)),
        }
    }

    /// Multiply by a non-negative integer.
    pub fn scale(&self, k: &BigUint) -> Self {
        let kr = BigRational::from_integer(BigInt::from(k.clone()));
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(r * kr),
            ExactReal::Quadratic(q) => ExactReal::from_elem(q.scale(&kr)),
            ExactReal::Radical(r) => ExactReal::Radical(r.scale(k)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(64).midpoint_f64()
    }

    /// Natural log of `|x|` to double precision; `None` for zero.
    pub fn ln_abs(&self) -> Option<f64> {
        match self {
            ExactReal::Rational(r) if r.is_zero() => None,
            ExactReal::Rational(r) => Some(
                crate::arith::ln_bigint_abs(r.numer()) - crate::arith::ln_bigint_abs(r.denom()),
            ),
            ExactReal::Radical(r) => {
                Some(crate::arith::ln_biguint(r.radicand()) / r.degree() as f64)
            }
            ExactReal::Quadratic(q) => PrecisionPolicy::default()
                .refine(|bits| {
                    let e = q.enclosure(bits).abs();
                    let lo = e.lower_scaled();
                    (lo.is_positive() && ((e.upper_scaled() - lo) << 52u32) <= *lo).then_some(e)
                })
                .ok()
                .and_then(|e| Some(0.5 * (e.ln_lower()? + e.ln_upper()?))),
        }
    }

    /// `‖x‖ = min |x − m|` over integers `m`.
    ///
    /// Irrational inputs are refined until the distance enclosure excludes
    /// zero and is accurate to about 40 relative bits.
    pub fn nearest_int_distance(
        &self,
        policy: &PrecisionPolicy,
    ) -> Result<Distance, AlgebraicError> {
        if let Some(r) = self.as_rational() {
            let m = round_half_even(r.numer(), r.denom());
            return Ok(Distance::Exact((r - BigRational::from_integer(m)).abs()));
        }
        let nearest = self.nearest_integer();
        let enclosure =
            policy.refine(|bits| relatively_tight(self.enclosure(bits).distance_to(&nearest)))?;
        Ok(Distance::Certified { nearest, enclosure })
    }

    /// `|x − r|`, exact when `x` is rational.
    ///
    /// Refinement starts high enough to resolve a difference of size about
    /// `1/den(r)²`.
    pub fn abs_diff_rational(
        &self,
        r: &BigRational,
        policy: &PrecisionPolicy,
    ) -> Result<Magnitude, AlgebraicError> {
        if let Some(x) = self.as_rational() {
            return Ok(Magnitude::Exact((x - r).abs()));
        }
        let start = policy
            .start_bits
            .max(2 * r.denom().bits() + RELATIVE_BITS + 8);
        let local = PrecisionPolicy {
            start_bits: start.min(policy.max_bits),
            max_bits: policy.max_bits,
        };
        let e =
            local.refine(|bits| relatively_tight(self.enclosure(bits).sub_rational(r).abs()))?;
        Ok(Magnitude::Enclosed(e))
    }
}

impl From<BigRational> for ExactReal {
    fn from(r: BigRational) -> Self {
        ExactReal::Rational(r)
    }
}
