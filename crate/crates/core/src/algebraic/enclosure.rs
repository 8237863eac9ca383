use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ln_biguint;

/// A closed interval `[lo, hi] / 2^bits` known to contain some real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigInt,
    hi: BigInt,
    bits: u64,
}

/// `floor(a / 2^k)` for signed `a`.
fn shr_floor(a: &BigInt, k: u64) -> BigInt {
    a >> k
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

impl Enclosure {
    pub fn new(lo: BigInt, hi: BigInt, bits: u64) -> Self {
        assert!(lo <= hi, "empty enclosure");
        Enclosure { lo, hi, bits }
    }

    /// Outward-rounded dyadic enclosure of an exact rational.
    pub fn from_rational(r: &BigRational, bits: u64) -> Self {
        let scaled = r * BigRational::from_integer(pow2(bits));
        Enclosure::new(
            scaled.floor().to_integer(),
            scaled.ceil().to_integer(),
            bits,
        )
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn lower_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn upper_scaled(&self) -> &BigInt {
        &self.hi
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.bits))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.bits))
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow2(self.bits))
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn lower_f64(&self) -> f64 {
        dyadic_to_f64(&self.lo, self.bits)
    }

    pub fn upper_f64(&self) -> f64 {
        dyadic_to_f64(&self.hi, self.bits)
    }

    pub fn midpoint_f64(&self) -> f64 {
        dyadic_to_f64(&(&self.lo + &self.hi), self.bits + 1)
    }

    /// Natural log of the lower end; `None` unless the enclosure is positive.
    pub fn ln_lower(&self) -> Option<f64> {
        self.is_positive()
            .then(|| ln_biguint(self.lo.magnitude()) - self.bits as f64 * std::f64::consts::LN_2)
    }

    pub fn ln_upper(&self) -> Option<f64> {
        self.hi
            .is_positive()
            .then(|| ln_biguint(self.hi.magnitude()) - self.bits as f64 * std::f64::consts::LN_2)
    }

    /// Multiply by an exact integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Enclosure::new(b, a, self.bits)
        } else {
            Enclosure::new(a, b, self.bits)
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure::new(-&self.hi, -&self.lo, self.bits)
    }

    pub fn add_int(&self, k: &BigInt) -> Self {
        let shift = k << self.bits;
        Enclosure::new(&self.lo + &shift, &self.hi + &shift, self.bits)
    }

    /// `self − r`, rounded outward to the same number of bits.
    pub fn sub_rational(&self, r: &BigRational) -> Self {
        let r_enc = Enclosure::from_rational(r, self.bits);
        Enclosure::new(&self.lo - &r_enc.hi, &self.hi - &r_enc.lo, self.bits)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Enclosure::new(BigInt::zero(), m, self.bits)
        }
    }

    /// The integer nearest to every point of the enclosure, if there is one
    /// and no half-integer lies in the closed interval.
    pub fn nearest_integer(&self) -> Option<BigInt> {
        // round(x) = floor(x + 1/2); x + 1/2 must stay strictly inside (m, m + 1).
        let half = pow2(self.bits) >> 1u32;
        let lo_shift = &self.lo + &half;
        let hi_shift = &self.hi + &half;
        let m_lo = shr_floor(&lo_shift, self.bits);
        let m_hi = shr_floor(&hi_shift, self.bits);
        if m_lo != m_hi || self.bits == 0 {
            return None;
        }
        // Exclude the closed endpoints m − 1/2 and m + 1/2.
        let m_scaled = &m_lo << self.bits;
        if lo_shift == m_scaled {
            return None;
        }
        Some(m_lo)
    }

    /// Certified `floor` when no integer lies in the enclosure.
    pub fn floor(&self) -> Option<BigInt> {
        let f_lo = shr_floor(&self.lo, self.bits);
        let f_hi = shr_floor(&self.hi, self.bits);
        if f_lo != f_hi {
            return None;
        }
        // lo exactly an integer means the true value might equal it.
        if (&f_lo << self.bits) == self.lo {
            return None;
        }
        Some(f_lo)
    }

    /// Enclosure of `|x − m|` for an integer `m`.
    pub fn distance_to(&self, m: &BigInt) -> Self {
        self.add_int(&-m).abs()
    }

    /// Compare the whole enclosure against an exact rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        if self.upper() < *r {
            Some(Ordering::Less)
        } else if self.lower() > *r {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lower_f64(), self.upper_f64())
    }
}

/// `m / 2^k` rounded to the nearest double (up to one ulp).
pub fn dyadic_to_f64(m: &BigInt, k: u64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let sign = if m.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let mag: &BigUint = m.magnitude();
    let bits = mag.bits();
    let shift = bits.saturating_sub(64);
    let top = (mag >> shift).to_f64().expect("64-bit");
    let exp = shift as i64 - k as i64;
    sign * top * 2f64.powi(exp.clamp(-1100, 1100) as i32)
}

/// `floor` of a rational, rounding half to even for [`round_half_even`].
pub fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice: BigInt = &r * 2;
    match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}
