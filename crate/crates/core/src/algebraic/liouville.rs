//! The constant `C_ξ = a_d ξ^(d−1) ∏_{i>j} |ξᵢ|/ξ` and the lower bound
//! `‖ξⁿ‖ ≥ 3^(−(d−1)) C_ξ^(−n)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Algebraic, AlgebraicError, ExactReal, PrecisionPolicy, QuadElem, Radical};
use crate::arith::ln_bigint_abs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleConstant {
    pub degree: u32,
    pub value: ExactReal,
}

impl LiouvilleConstant {
    pub fn ln(&self) -> f64 {
        self.value.ln_abs().expect("constant is positive")
    }
}

/// Exact `C_ξ` for `ξ > 1`.
///
/// Rational `r/s`: `C = s`. Quadratic: `C = a₂·max(ξ, |ξ'|)`, the larger
/// modulus decided exactly. Root `m^(1/d)`: every conjugate has modulus `ξ`,
/// so `C = ξ^(d−1) = (m^(d−1))^(1/d)`.
pub fn liouville_constant(x: &Algebraic) -> Result<LiouvilleConstant, AlgebraicError> {
    let degree = x.degree();
    let value = match x {
        Algebraic::Rational(r) => {
            if r <= &BigRational::one() {
                return Err(AlgebraicError::InvalidInput(format!(
                    "{r} is not greater than 1"
                )));
            }
            ExactReal::Rational(BigRational::from_integer(r.denom().clone()))
        }
        Algebraic::Quadratic(q) => {
            let xi = q.to_elem();
            if xi.add_rational(&-BigRational::one()).sign() != Ordering::Greater {
                return Err(AlgebraicError::InvalidInput(format!(
                    "{q} is not greater than 1"
                )));
            }
            let lead = BigRational::from_integer(q.leading_coefficient());
            let big = if conjugate_dominates(&xi) {
                let c = xi.conj();
                if c.sign() == Ordering::Less {
                    c.scale(&-BigRational::one())
                } else {
                    c
                }
            } else {
                xi
            };
            ExactReal::Quadratic(big.scale(&lead))
        }
        Algebraic::Root(r) => {
            let d = r.degree();
            ExactReal::Radical(Radical::new(r.radicand().pow(d - 1), d))
        }
    };
    Ok(LiouvilleConstant { degree, value })
}

/// Whether `|ξ'| > ξ` for `ξ > 0`, decided without rounding.
fn conjugate_dominates(xi: &QuadElem) -> bool {
    let conj = xi.conj();
    if conj.sign() != Ordering::Less {
        // ξ − ξ' = 2y√d
        xi.surd_part().is_negative()
    } else {
        // |ξ'| − ξ = −(ξ + ξ') = −2x
        xi.rational_part().is_negative()
    }
}

/// `ln C_ξ` from floating conjugate moduli, following the defining product
/// literally. Conjugates tied in modulus with `ξ` are placed after it when
/// `tie_last` is false and before it otherwise; both orders must agree.
pub fn liouville_log_by_ordering(
    ln_lead: f64,
    xi: f64,
    conj_moduli: &[f64],
    tie_last: bool,
) -> f64 {
    let d = conj_moduli.len() + 1;
    // (modulus, is_xi) sorted ascending; the tie class order is the only freedom.
    let mut all: Vec<(f64, bool)> = conj_moduli.iter().map(|&m| (m, false)).collect();
    all.push((xi, true));
    all.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then_with(|| match (a.1, b.1, tie_last) {
                (true, false, true) => Ordering::Greater,
                (false, true, true) => Ordering::Less,
                (true, false, false) => Ordering::Less,
                (false, true, false) => Ordering::Greater,
                _ => Ordering::Equal,
            })
    });
    let j = all.iter().position(|&(_, is_xi)| is_xi).expect("ξ present");
    let tail: f64 = all[j + 1..].iter().map(|&(m, _)| m.ln() - xi.ln()).sum();
    ln_lead + (d as f64 - 1.0) * xi.ln() + tail
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapOutcome {
    Holds,
    Violated,
    /// `ξⁿ` is an integer, where the bound says nothing.
    IntegerPower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerGapCheck {
    pub n: u32,
    pub outcome: GapOutcome,
    /// Fractional bits used for the decision (0 when exact).
    pub bits: u64,
    /// `ln ‖ξⁿ‖`, midpoint of the certified range.
    pub ln_distance: f64,
    /// `ln(3^(−(d−1)) C_ξ^(−n))`.
    pub ln_bound: f64,
}

/// Decide `‖ξⁿ‖ · C_ξⁿ · 3^(d−1) ≥ 1` exactly (rational ξ) or from certified
/// enclosures, refining precision until one side is proved.
pub fn check_power_gap(
    x: &Algebraic,
    n: u32,
    policy: &PrecisionPolicy,
) -> Result<PowerGapCheck, AlgebraicError> {
    let c = liouville_constant(x)?;
    let d = x.degree();
    let three = BigInt::from(3).pow(d - 1);
    let ln_bound = -((d - 1) as f64) * 3f64.ln() - n as f64 * c.ln();
    let power = x.value().pow(n);
    let mut check = PowerGapCheck {
        n,
        outcome: GapOutcome::IntegerPower,
        bits: 0,
        ln_distance: f64::NEG_INFINITY,
        ln_bound,
    };
    if power.is_integer() {
        return Ok(check);
    }
    if let (Some(p), Some(cv)) = (power.as_rational(), c.value.as_rational()) {
        let nearest = super::round_half_even(p.numer(), p.denom());
        let dist = (p - BigRational::from_integer(nearest)).abs();
        check.ln_distance = ln_bigint_abs(dist.numer()) - ln_bigint_abs(dist.denom());
        let product = dist * num_traits::Pow::pow(cv, n) * BigRational::from_integer(three);
        check.outcome = if product >= BigRational::one() {
            GapOutcome::Holds
        } else {
            GapOutcome::Violated
        };
        return Ok(check);
    }
    let nearest = power.nearest_integer();
    let cn = c.value.pow(n);
    let (outcome, bits, ln_distance) = policy.refine(|bits| {
        let dist = power.enclosure(bits).distance_to(&nearest);
        let ce = cn.enclosure(bits);
        let one = BigInt::one() << (2 * bits);
        let lower = dist.lower_scaled() * ce.lower_scaled() * &three;
        let upper = dist.upper_scaled() * ce.upper_scaled() * &three;
        let mid = dist
            .ln_lower()
            .zip(dist.ln_upper())
            .map(|(a, b)| 0.5 * (a + b));
        if dist.lower_scaled().is_positive() && ce.lower_scaled().is_positive() && lower >= one {
            Some((GapOutcome::Holds, bits, mid.unwrap_or(f64::NEG_INFINITY)))
        } else if upper < one {
            Some((GapOutcome::Violated, bits, mid.unwrap_or(f64::NEG_INFINITY)))
        } else {
            None
        }
    })?;
    check.outcome = outcome;
    check.bits = bits;
    check.ln_distance = ln_distance;
    Ok(check)
}
