//! Rationals, real quadratic irrationals and roots of integers, with exact
//! arithmetic where possible and certified dyadic enclosures elsewhere.

mod enclosure;
mod liouville;
mod quadratic;
mod real;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{ln_biguint, rational_height, ArithError};

pub use enclosure::{dyadic_to_f64, round_half_even, Enclosure};
pub use liouville::{
    check_power_gap, liouville_constant, liouville_log_by_ordering, GapOutcome, LiouvilleConstant,
    PowerGapCheck,
};
pub use quadratic::{QuadElem, QuadraticReal};
pub use real::{Distance, ExactReal, Magnitude, PrecisionPolicy, Radical};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraicError {
    #[error("value is rational")]
    NotIrrational,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precision budget exhausted at {bits} bits")]
    PrecisionExhausted { bits: u64 },
    #[error("cannot parse number {0:?}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `m^(1/d)` with `d` minimal, so the value is irrational and greater than 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootOfInteger {
    m: BigUint,
    d: u32,
}

impl RootOfInteger {
    /// Reduces `(m, d)` until `m` is not a perfect `e`-th power for any
    /// `e | d`, `e > 1`.
    pub fn new(m: BigUint, d: u32) -> Result<Self, AlgebraicError> {
        if m < BigUint::from(2u32) || d < 2 {
            return Err(AlgebraicError::InvalidInput(format!(
                "root({m},{d}) needs m >= 2 and d >= 2"
            )));
        }
        let (mut m, mut d) = (m, d);
        'reduce: loop {
            for e in (2..=d).rev().filter(|e| d % e == 0) {
                let r = m.nth_root(e);
                if r.pow(e) == m {
                    m = r;
                    d /= e;
                    continue 'reduce;
                }
            }
            break;
        }
        if d == 1 {
            return Err(AlgebraicError::NotIrrational);
        }
        Ok(RootOfInteger { m, d })
    }

    pub fn radicand(&self) -> &BigUint {
        &self.m
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn to_radical(&self) -> Radical {
        Radical::new(self.m.clone(), self.d)
    }
}

impl fmt::Display for RootOfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root({},{})", self.m, self.d)
    }
}

/// A number from one of the supported classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Algebraic {
    Rational(BigRational),
    Quadratic(QuadraticReal),
    Root(RootOfInteger),
}

impl Algebraic {
    pub fn rational(n: i64, d: i64) -> Self {
        Algebraic::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn sqrt(n: u64) -> Result<Self, AlgebraicError> {
        QuadraticReal::sqrt(n).map(Algebraic::Quadratic)
    }

    pub fn golden_ratio() -> Self {
        Algebraic::Quadratic(QuadraticReal::golden_ratio())
    }

    pub fn root(m: u64, d: u32) -> Result<Self, AlgebraicError> {
        RootOfInteger::new(m.into(), d).map(Algebraic::Root)
    }

    pub fn degree(&self) -> u32 {
        match self {
            Algebraic::Rational(_) => 1,
            Algebraic::Quadratic(_) => 2,
            Algebraic::Root(r) => r.degree(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Algebraic::Rational(_))
    }

    /// Leading coefficient of the primitive integer minimal polynomial.
    pub fn leading_coefficient(&self) -> BigInt {
        match self {
            Algebraic::Rational(r) => r.denom().clone(),
            Algebraic::Quadratic(q) => q.leading_coefficient(),
            Algebraic::Root(_) => BigInt::one(),
        }
    }

    pub fn value(&self) -> ExactReal {
        match self {
            Algebraic::Rational(r) => ExactReal::Rational(r.clone()),
            Algebraic::Quadratic(q) => ExactReal::Quadratic(q.to_elem()),
            Algebraic::Root(r) => ExactReal::Radical(r.to_radical()),
        }
    }

    /// Absolute logarithmic Weil height.
    pub fn height(&self) -> f64 {
        match self {
            Algebraic::Rational(r) => rational_height(r),
            Algebraic::Quadratic(q) => {
                let lead = q.leading_coefficient();
                let big = |e: &QuadElem| {
                    ExactReal::Quadratic(e.clone())
                        .ln_abs()
                        .expect("irrational is nonzero")
                        .max(0.0)
                };
                let elem = q.to_elem();
                0.5 * (ln_biguint(lead.magnitude()) + big(&elem) + big(&elem.conj()))
            }
            Algebraic::Root(r) => ln_biguint(r.radicand()) / r.degree() as f64,
        }
    }

    pub fn h_star(&self) -> f64 {
        self.height().max(1.0)
    }

    /// Enclosure of width at most `target_width`.
    pub fn evaluate(&self, target_width: &BigRational) -> Result<Enclosure, AlgebraicError> {
        if !target_width.is_positive() {
            return Err(AlgebraicError::InvalidInput(
                "target width must be positive".into(),
            ));
        }
        let v = self.value();
        let mut bits = 8u64;
        loop {
            let e = v.enclosure(bits);
            if &e.width() <= target_width {
                return Ok(e);
            }
            bits *= 2;
        }
    }

    pub fn nearest_int_distance(
        &self,
        policy: &PrecisionPolicy,
    ) -> Result<Distance, AlgebraicError> {
        self.value().nearest_int_distance(policy)
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64()
    }
}

impl fmt::Display for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebraic::Rational(r) => write!(f, "{r}"),
            Algebraic::Quadratic(q) => {
                if q.a().is_zero() && q.b().is_one() && q.c().is_one() {
                    write!(f, "sqrt({})", q.d())
                } else {
                    write!(f, "{q}")
                }
            }
            Algebraic::Root(r) => write!(f, "{r}"),
        }
    }
}

/// Accepts `7`, `-3/4`, `sqrt(N)`, `phi`, `root(M,D)` for `M^(1/D)`, and
/// `quad(A,B,C,D)` for `(A + B√D)/C`.
impl FromStr for Algebraic {
    type Err = AlgebraicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraicError::Parse(s.to_string());
        let int = |x: &str| x.parse::<BigInt>().map_err(|_| bad());
        if t == "phi" {
            return Ok(Algebraic::golden_ratio());
        }
        if let Some((head, rest)) = t.split_once('(') {
            let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').collect();
            return match (head, args.as_slice()) {
                ("sqrt", [n]) => QuadraticReal::new(0.into(), 1.into(), 1.into(), int(n)?)
                    .map(Algebraic::Quadratic),
                ("root", [m, d]) => {
                    let m = m.parse::<BigUint>().map_err(|_| bad())?;
                    let d = d.parse::<u32>().map_err(|_| bad())?;
                    RootOfInteger::new(m, d).map(Algebraic::Root)
                }
                ("quad", [a, b, c, d]) => {
                    QuadraticReal::new(int(a)?, int(b)?, int(c)?, int(d)?).map(Algebraic::Quadratic)
                }
                _ => Err(bad()),
            };
        }
        let r = match t.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(int(n)?, d)
            }
            None => BigRational::from_integer(int(&t)?),
        };
        Ok(Algebraic::Rational(r))
    }
}

/// `(r/s)ⁿ = A_n + m_n / sⁿ` with `A_n` the nearest integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracPartPower {
    pub n: u32,
    pub a_n: BigInt,
    pub m_n: BigInt,
    pub distance: BigRational,
}

/// Exact `‖(r/s)ⁿ‖` through `m_n = rⁿ − A_n sⁿ`; ties round half to even.
pub fn fracpart_power_rational(x: &BigRational, n: u32) -> Result<FracPartPower, AlgebraicError> {
    let (r, s) = (x.numer(), x.denom());
    if s < &BigInt::from(2) || r <= s {
        return Err(AlgebraicError::InvalidInput(format!(
            "need r > s >= 2, got {x}"
        )));
    }
    let rn = num_traits::Pow::pow(r, n);
    let sn = num_traits::Pow::pow(s, n);
    let a_n = round_half_even(&rn, &sn);
    let m_n = &rn - &a_n * &sn;
    let distance = BigRational::new(m_n.abs(), sn);
    Ok(FracPartPower {
        n,
        a_n,
        m_n,
        distance,
    })
}

/// `true` when `x` is a half-integer, the only case where the nearest integer
/// needs a tie-break.
pub fn is_half_integer(x: &BigRational) -> bool {
    x.denom() == &BigInt::from(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn heights() {
        assert!((Algebraic::rational(3, 2).height() - 3f64.ln()).abs() < 1e-15);
        assert_eq!(Algebraic::rational(1, 1).height(), 0.0);
        let sqrt2 = Algebraic::sqrt(2).unwrap();
        assert!((sqrt2.height() - 0.5 * 2f64.ln()).abs() < 1e-14);
        assert_eq!(sqrt2.h_star(), 1.0);
        // log 3 > 1, so no clamping for 3/2; 4/3 and 2 clamp.
        assert_eq!(Algebraic::rational(3, 2).h_star(), 3f64.ln());
        assert_eq!(Algebraic::rational(2, 1).h_star(), 1.0);
        let big = Algebraic::Rational(BigRational::from_integer(BigInt::one() << 100u32));
        assert!((big.h_star() - 100.0 * 2f64.ln()).abs() < 1e-12);
        // φ is a unit: M(X² − X − 1) = φ.
        let phi = Algebraic::golden_ratio();
        assert!((phi.height() - 0.5 * 1.618033988749895f64.ln()).abs() < 1e-14);
        // (1 + √3)/2: M(2X² − 2X − 1) = 2·|ξ|.
        let x = Algebraic::Quadratic(
            QuadraticReal::new(1.into(), 1.into(), 2.into(), 3.into()).unwrap(),
        );
        let xi = (1.0 + 3f64.sqrt()) / 2.0;
        assert!((x.height() - 0.5 * (2.0 * xi).ln()).abs() < 1e-14);
        let cbrt = Algebraic::root(2, 3).unwrap();
        assert!((cbrt.height() - 2f64.ln() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rational_height_identities() {
        for (n, d) in [(3i64, 2i64), (-7, 12), (100, 3), (1, 9)] {
            let x = Algebraic::rational(n, d);
            let inv = Algebraic::rational(d, n);
            assert!((x.height() - inv.height()).abs() < 1e-12);
            for k in 1..6u32 {
                let xk = Algebraic::Rational(num_traits::Pow::pow(q(n, d), k));
                assert!((xk.height() - k as f64 * x.height()).abs() < 1e-12 * xk.height().max(1.0));
            }
        }
    }

    #[test]
    fn root_reduction() {
        let r = RootOfInteger::new(BigUint::from(4u32), 4).unwrap();
        assert_eq!((r.radicand(), r.degree()), (&BigUint::from(2u32), 2));
        let r = RootOfInteger::new(BigUint::from(64u32), 6).unwrap_err();
        assert_eq!(r, AlgebraicError::NotIrrational);
        let r = RootOfInteger::new(BigUint::from(8u32), 6).unwrap();
        assert_eq!((r.radicand(), r.degree()), (&BigUint::from(2u32), 2));
        let r = RootOfInteger::new(BigUint::from(12u32), 3).unwrap();
        assert_eq!(r.degree(), 3);
    }

    #[test]
    fn evaluation() {
        let w = q(1, 1024);
        let e = Algebraic::sqrt(2).unwrap().evaluate(&w).unwrap();
        assert!(e.width() <= w);
        assert!(e.lower_f64() < 1.41422 && e.upper_f64() > 1.41421);
        let e = Algebraic::rational(3, 2).evaluate(&q(1, 7)).unwrap();
        assert_eq!((e.lower(), e.upper()), (q(3, 2), q(3, 2)));
        let w = q(1, 1 << 20);
        let e = Algebraic::root(2, 3).unwrap().evaluate(&w).unwrap();
        assert!(e.width() <= w);
        assert!(e.lower_f64() <= 1.2599210498948732 && e.upper_f64() >= 1.2599210498948731);
        assert!(Algebraic::sqrt(2).unwrap().evaluate(&q(0, 1)).is_err());
    }

    #[test]
    fn enclosures_nest_under_refinement() {
        for x in ["sqrt(3)", "phi", "root(5,4)", "quad(-3,2,7,13)"] {
            let v: Algebraic = x.parse().unwrap();
            let val = v.value();
            let mut prev = val.enclosure(4);
            for bits in [8u64, 16, 64, 256] {
                let e = val.enclosure(bits);
                assert!(
                    e.lower() >= prev.lower() && e.upper() <= prev.upper(),
                    "{x} at {bits}"
                );
                assert!(e.width() < prev.width());
                prev = e;
            }
        }
    }

    #[test]
    fn fracpart_examples() {
        let f = fracpart_power_rational(&q(3, 2), 1).unwrap();
        assert_eq!((f.a_n, f.m_n, f.distance), (2.into(), (-1).into(), q(1, 2)));
        let f = fracpart_power_rational(&q(3, 2), 5).unwrap();
        assert_eq!((f.m_n, f.distance), ((-13).into(), q(13, 32)));
        let f = fracpart_power_rational(&q(5, 4), 2).unwrap();
        assert_eq!(
            (f.a_n, f.m_n, f.distance),
            (2.into(), (-7).into(), q(7, 16))
        );
        assert!(fracpart_power_rational(&q(3, 1), 2).is_err());
        assert!(fracpart_power_rational(&q(2, 3), 2).is_err());
    }

    #[test]
    fn half_integer_tie_does_not_change_distance() {
        // 3/2 rounds to 2 under half-even, 1 under half-up; distance is 1/2 either way.
        let x = q(3, 2);
        assert!(is_half_integer(&x));
        let even = round_half_even(x.numer(), x.denom());
        let up = (&x + q(1, 2)).floor().to_integer() - 1;
        let d_even = (&x - BigRational::from_integer(even)).abs();
        let d_other = (&x - BigRational::from_integer(up)).abs();
        assert_eq!(d_even, d_other);
    }

    #[test]
    fn parsing_round_trips_through_display() {
        for s in ["7", "-3/4", "sqrt(2)", "root(2,3)", "quad(1,1,2,5)"] {
            let x: Algebraic = s.parse().unwrap();
            let again: Algebraic = x.to_string().parse().unwrap();
            assert_eq!(x, again, "{s}");
        }
        assert_eq!(
            "phi".parse::<Algebraic>().unwrap(),
            Algebraic::golden_ratio()
        );
        assert!("sqrt(4)".parse::<Algebraic>().is_err());
        assert!("1/0".parse::<Algebraic>().is_err());
        assert!("cbrt(2)".parse::<Algebraic>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn power_exponents_add(a in -20i64..20, b in 1i64..20, c in 1i64..10, d in 2i64..30, m in 0u32..12, n in 0u32..12) {
                let Ok(x) = QuadraticReal::new(a.into(), b.into(), c.into(), d.into()) else {
                    return Ok(());
                };
                prop_assert_eq!(x.pow(m).mul(&x.pow(n)), x.pow(m + n));
            }

            #[test]
            fn fracpart_invariants(r in 3i64..200, s in 2i64..100, n in 1u32..60) {
                let x = BigRational::new(r.into(), s.into());
                prop_assume!(x.numer() > x.denom() && x.denom() >= &BigInt::from(2));
                let f = fracpart_power_rational(&x, n).unwrap();
                let sn = num_traits::Pow::pow(x.denom(), n);
                let rn = num_traits::Pow::pow(x.numer(), n);
                prop_assert!(f.m_n.abs() * 2 <= sn);
                prop_assert_eq!((&rn - &f.m_n) % &sn, BigInt::zero());
                let exact = (BigRational::new(rn, sn) - BigRational::from_integer(f.a_n.clone())).abs();
                prop_assert_eq!(exact, f.distance);
            }
        }
    }
}
