use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::enclosure::Enclosure;
use super::AlgebraicError;
use crate::arith::{factorize, FactorBudget};

/// Element `x + y√d` of ℚ(√d), with `d > 1` squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    x: BigRational,
    y: BigRational,
    d: BigInt,
}

impl QuadElem {
    /// `d` must already be squarefree and greater than 1.
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Self {
        debug_assert!(d > BigInt::one());
        QuadElem { x, y, d }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.x
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.y
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem::new(self.x.clone(), -&self.y, self.d.clone())
    }

    pub fn mul(&self, other: &QuadElem) -> Self {
        assert_eq!(self.d, other.d, "elements of different fields");
        let d = BigRational::from_integer(self.d.clone());
        QuadElem::new(
            &self.x * &other.x + &self.y * &other.y * d,
            &self.x * &other.y + &self.y * &other.x,
            self.d.clone(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadElem::new(&self.x * k, &self.y * k, self.d.clone())
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        QuadElem::new(&self.x + r, self.y.clone(), self.d.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        // d squarefree > 1, so the norm vanishes only at zero.
        let norm =
            &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.d.clone());
        if norm.is_zero() {
            return None;
        }
        Some(QuadElem::new(
            &self.x / &norm,
            -&self.y / &norm,
            self.d.clone(),
        ))
    }

    pub fn add(&self, other: &QuadElem) -> Self {
        assert_eq!(self.d, other.d, "elements of different fields");
        QuadElem::new(&self.x + &other.x, &self.y + &other.y, self.d.clone())
    }

    /// Binary exponentiation; `pow(0)` is 1.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = QuadElem::new(BigRational::one(), BigRational::zero(), self.d.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(a, b, c)` with value `(a + b√d)/c`, `c > 0` minimal.
    pub fn integral_form(&self) -> (BigInt, BigInt, BigInt) {
        let c = self.x.denom().lcm(self.y.denom());
        let a = self.x.numer() * (&c / self.x.denom());
        let b = self.y.numer() * (&c / self.y.denom());
        (a, b, c)
    }

    /// Floor of `|b|√d` for the integral form, with the exact sign handling
    /// needed to floor `(a + b√d)`.
    fn floor_numerator(a: &BigInt, b: &BigInt, d: &BigInt) -> BigInt {
        let r = BigInt::from((b * b * d).magnitude().sqrt());
        match b.sign() {
            Sign::Plus => a + r,
            Sign::Minus => a - r - 1,
            Sign::NoSign => a.clone(),
        }
    }

    pub fn floor(&self) -> BigInt {
        let (a, b, c) = self.integral_form();
        QuadElem::floor_numerator(&a, &b, &self.d).div_floor(&c)
    }

    /// Nearest integer; ties only occur for rational elements and round half
    /// to even there.
    pub fn nearest_integer(&self) -> BigInt {
        if self.is_rational() {
            return super::enclosure::round_half_even(self.x.numer(), self.x.denom());
        }
        self.add_rational(&BigRational::new(1.into(), 2.into()))
            .floor()
    }

    pub fn sign(&self) -> Ordering {
        let zero = BigRational::zero();
        let sx = self.x.cmp(&zero);
        let sy = self.y.cmp(&zero);
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        // Opposite signs: compare x² with y²d.
        let x2 = &self.x * &self.x;
        let y2d = &self.y * &self.y * BigRational::from_integer(self.d.clone());
        match x2.cmp(&y2d) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Dyadic enclosure with `bits` fractional bits; width at most
    /// `2^(1 − bits)`.
    pub fn enclosure(&self, bits: u64) -> Enclosure {
        if self.is_rational() {
            return Enclosure::from_rational(&self.x, bits);
        }
        let (a, b, c) = self.integral_form();
        let extra = c.bits() + 2;
        let k = bits + extra;
        let s = BigInt::from(((&b * &b * &self.d) << (2 * k)).magnitude().sqrt());
        let (t_lo, t_hi) = if b.is_positive() {
            (s.clone(), s + 1)
        } else {
            (-&s - 1, -s)
        };
        let base = &a << k;
        let den = &c << extra;
        let lo = (&base + t_lo).div_floor(&den);
        let hi = -((-(base + t_hi)).div_floor(&den));
        Enclosure::new(lo, hi, bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(64).midpoint_f64()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

/// Real quadratic irrational `(a + b√d)/c` in normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticReal {
    /// Normalizes `d` to its squarefree part, makes `c > 0` and divides out
    /// `gcd(a, b, c)`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, AlgebraicError> {
        if c.is_zero() {
            return Err(AlgebraicError::InvalidInput("zero denominator".into()));
        }
        if d <= BigInt::zero() {
            return Err(AlgebraicError::InvalidInput(format!(
                "radicand {d} does not give a real quadratic"
            )));
        }
        let (square, free) = square_split(&d)?;
        let b = b * square;
        if b.is_zero() || free.is_one() {
            return Err(AlgebraicError::NotIrrational);
        }
        let g = a.gcd(&b).gcd(&c);
        let sign = if c.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let k = g * sign;
        Ok(QuadraticReal {
            a: a / &k,
            b: b / &k,
            c: c / &k,
            d: free,
        })
    }

    pub fn sqrt(n: u64) -> Result<Self, AlgebraicError> {
        QuadraticReal::new(0.into(), 1.into(), 1.into(), n.into())
    }

    pub fn golden_ratio() -> Self {
        QuadraticReal::new(1.into(), 1.into(), 2.into(), 5.into()).expect("valid")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadraticReal {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn to_elem(&self) -> QuadElem {
        QuadElem::new(
            BigRational::new(self.a.clone(), self.c.clone()),
            BigRational::new(self.b.clone(), self.c.clone()),
            self.d.clone(),
        )
    }

    /// Primitive integer minimal polynomial, coefficients from the constant
    /// term upward, leading coefficient positive.
    pub fn minimal_polynomial(&self) -> [BigInt; 3] {
        let c2 = &self.c * &self.c;
        let c1 = -(&self.a * &self.c) * 2;
        let c0 = &self.a * &self.a - &self.b * &self.b * &self.d;
        let g = c0.gcd(&c1).gcd(&c2);
        [c0 / &g, c1 / &g, c2 / &g]
    }

    pub fn leading_coefficient(&self) -> BigInt {
        let [_, _, lead] = self.minimal_polynomial();
        lead
    }

    pub fn pow(&self, n: u32) -> QuadElem {
        self.to_elem().pow(n)
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quad({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// `d = s²·f` with `f` squarefree; `d > 0`.
fn square_split(d: &BigInt) -> Result<(BigInt, BigInt), AlgebraicError> {
    let map = factorize(d, &FactorBudget::default())?;
    if !map.is_complete() {
        return Err(AlgebraicError::InvalidInput(format!(
            "cannot factor radicand {d} within budget"
        )));
    }
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    for (p, e) in map.factors() {
        let p = BigInt::from(p.clone());
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
    }
    Ok((square, free))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        let x = QuadraticReal::new(2.into(), 2.into(), (-4).into(), 8.into()).unwrap();
        // (2 + 2√8)/(−4) = (−1 − 2√2)/2
        assert_eq!(
            (x.a(), x.b(), x.c(), x.d()),
            (&(-1).into(), &(-2).into(), &2.into(), &2.into())
        );
        assert_eq!(QuadraticReal::sqrt(9), Err(AlgebraicError::NotIrrational));
        assert!(QuadraticReal::new(1.into(), 0.into(), 1.into(), 2.into()).is_err());
        assert!(QuadraticReal::new(1.into(), 1.into(), 1.into(), (-2).into()).is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let sqrt2 = QuadraticReal::sqrt(2).unwrap();
        assert_eq!(
            sqrt2.minimal_polynomial(),
            [(-2).into(), 0.into(), 1.into()]
        );
        let phi = QuadraticReal::golden_ratio();
        assert_eq!(
            phi.minimal_polynomial(),
            [(-1).into(), (-1).into(), 1.into()]
        );
        // (1 + √3)/2 has minimal polynomial 2X² − 2X − 1.
        let x = QuadraticReal::new(1.into(), 1.into(), 2.into(), 3.into()).unwrap();
        assert_eq!(x.minimal_polynomial(), [(-1).into(), (-2).into(), 2.into()]);
    }

    #[test]
    fn powers() {
        let sqrt2 = QuadraticReal::sqrt(2).unwrap();
        let sq = sqrt2.pow(2);
        assert_eq!((sq.rational_part(), sq.surd_part()), (&q(2, 1), &q(0, 1)));
        let one_plus = QuadraticReal::new(1.into(), 1.into(), 1.into(), 2.into()).unwrap();
        let p = one_plus.pow(2);
        assert_eq!((p.rational_part(), p.surd_part()), (&q(3, 1), &q(2, 1)));
        let cube = QuadraticReal::golden_ratio().pow(3);
        assert_eq!(
            (cube.rational_part(), cube.surd_part()),
            (&q(2, 1), &q(1, 1))
        );
        // Conjugation commutes with powering.
        let x = QuadraticReal::new(3.into(), (-2).into(), 7.into(), 11.into()).unwrap();
        assert_eq!(x.pow(9).conj(), x.conjugate().pow(9));
    }

    #[test]
    fn exact_floor_sign_and_rounding() {
        let sqrt2 = QuadraticReal::sqrt(2).unwrap().to_elem();
        assert_eq!(sqrt2.floor(), BigInt::from(1));
        assert_eq!(sqrt2.conj().floor(), BigInt::from(-2));
        assert_eq!(sqrt2.scale(&q(10, 1)).nearest_integer(), BigInt::from(14));
        let phi = QuadraticReal::golden_ratio().to_elem();
        assert_eq!(phi.nearest_integer(), BigInt::from(2));
        assert_eq!(phi.conj().sign(), Ordering::Less);
        assert_eq!(phi.add_rational(&q(-2, 1)).sign(), Ordering::Less);
        assert_eq!(phi.pow(10).nearest_integer(), BigInt::from(123));
    }

    #[test]
    fn enclosures_contain_value() {
        let sqrt2 = QuadraticReal::sqrt(2).unwrap().to_elem();
        for bits in [1u64, 10, 64, 300] {
            let e = sqrt2.enclosure(bits);
            assert!(e.lower_f64() <= std::f64::consts::SQRT_2 + 1e-15);
            assert!(e.upper_f64() >= std::f64::consts::SQRT_2 - 1e-15);
            let w = e.width();
            assert!(w <= BigRational::new(2.into(), BigInt::one() << bits));
            // The square of the bounds brackets 2.
            assert!(e.lower() * e.lower() < q(2, 1) && e.upper() * e.upper() > q(2, 1));
        }
        let neg = QuadraticReal::new(1.into(), (-3).into(), 5.into(), 7.into())
            .unwrap()
            .to_elem();
        let e = neg.enclosure(80);
        let v = (1.0 - 3.0 * 7f64.sqrt()) / 5.0;
        assert!((e.midpoint_f64() - v).abs() < 1e-15);
    }
}
