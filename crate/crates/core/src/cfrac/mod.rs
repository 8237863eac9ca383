//! Continued fractions, convergents and the Legendre test for good
//! approximations.

mod exponents;

use std::collections::HashMap;

use crate::algebraic::{
    Algebraic, AlgebraicError, ExactReal, Magnitude, PrecisionPolicy, QuadElem, QuadraticReal,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

pub use exponents::{
    irrationality_exponent_series, nu_reference, nu_series, simultaneous_scan, vb_series, NuReport,
    SimultaneousReport, SimultaneousRow,
};

/// A convergent without its error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub partial_quotient: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRecord {
    pub index: usize,
    pub partial_quotient: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    /// `|θ − p/q|`.
    pub error: Magnitude,
}

/// Continued fraction of a quadratic irrational: `[preperiod; period, period, …]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl PeriodicExpansion {
    /// The `n`-th partial quotient.
    pub fn term(&self, n: usize) -> &BigInt {
        if n < self.preperiod.len() {
            &self.preperiod[n]
        } else {
            &self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Solve the fixed-point equation of the periodic tail and fold the
    /// preperiod back in.
    pub fn value(&self) -> Result<QuadraticReal, AlgebraicError> {
        // y = [c₁; …, c_k, y] gives q_k y² + (q_{k−1} − p_k) y − p_{k−1} = 0.
        let (pk, qk, pk1, qk1) = fold(&self.period);
        let disc = (&qk1 - &pk) * (&qk1 - &pk) + BigInt::from(4) * &qk * &pk1;
        let y =
            QuadraticReal::new(&pk - &qk1, BigInt::one(), BigInt::from(2) * &qk, disc)?.to_elem();
        if self.preperiod.is_empty() {
            return Ok(to_quadratic(&y));
        }
        // θ = (p_m y + p_{m−1}) / (q_m y + q_{m−1})
        let (pm, qm, pm1, qm1) = fold(&self.preperiod);
        let lift = |a: &BigInt, b: &BigInt| {
            y.scale(&BigRational::from_integer(a.clone()))
                .add_rational(&BigRational::from_integer(b.clone()))
        };
        let num = lift(&pm, &pm1);
        let den = lift(&qm, &qm1).inv().ok_or(AlgebraicError::NotIrrational)?;
        Ok(to_quadratic(&num.mul(&den)))
    }
}

/// Last two convergent numerators and denominators of a finite expansion:
/// `(p_k, q_k, p_{k−1}, q_{k−1})`.
fn fold(terms: &[BigInt]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut p, mut q, mut p1, mut q1) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for a in terms {
        let np = a * &p + &p1;
        let nq = a * &q + &q1;
        p1 = std::mem::replace(&mut p, np);
        q1 = std::mem::replace(&mut q, nq);
    }
    (p, q, p1, q1)
}

fn to_quadratic(e: &QuadElem) -> QuadraticReal {
    let (a, b, c) = e.integral_form();
    QuadraticReal::new(a, b, c, e.radicand().clone()).expect("irrational element")
}

/// Exact periodic expansion of `(a + b√d)/c` through the `(P + √D)/Q`
/// recursion, with the period found by state repetition.
pub fn quadratic_expansion(x: &QuadraticReal) -> PeriodicExpansion {
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    // (a + b√d)/c = (P + √D)/Q with √D = |b|√d
    let (mut p, mut q) = if b.is_positive() {
        (a.clone(), c.clone())
    } else {
        (-a, -c)
    };
    let mut big_d = b * b * d;
    if !(&big_d - &p * &p).is_multiple_of(&q) {
        let m = q.abs();
        p *= &m;
        big_d *= &m * &m;
        q *= &m;
    }
    let root = BigInt::from(big_d.magnitude().sqrt());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.split_off(start);
            return PeriodicExpansion {
                preperiod: terms,
                period,
            };
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        // floor((P + √D)/Q) from floor √D, sign of Q decides the rounding.
        let t: BigInt = if q.is_positive() {
            (&p + &root).div_floor(&q)
        } else {
            (&p + &root + BigInt::one()).div_floor(&q)
        };
        let p_next = &t * &q - &p;
        let q_next = (&big_d - &p_next * &p_next) / &q;
        terms.push(t);
        p = p_next;
        q = q_next;
    }
}

/// First `count` partial quotients (fewer for rationals that terminate).
pub fn partial_quotients(
    theta: &Algebraic,
    count: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<BigInt>, AlgebraicError> {
    match theta {
        Algebraic::Rational(r) => {
            let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
            let mut out = Vec::new();
            while !d.is_zero() && out.len() < count {
                let (t, rem) = n.div_mod_floor(&d);
                out.push(t);
                n = std::mem::replace(&mut d, rem);
            }
            Ok(out)
        }
        Algebraic::Quadratic(q) => {
            let exp = quadratic_expansion(q);
            Ok((0..count).map(|i| exp.term(i).clone()).collect())
        }
        Algebraic::Root(_) => {
            let value = theta.value();
            policy.refine(|bits| {
                let quotients = interval_quotients(&value, bits, count);
                (quotients.len() >= count).then_some(quotients)
            })
        }
    }
}

/// Partial quotients shared by every point of a dyadic enclosure of an
/// irrational number.
fn interval_quotients(value: &ExactReal, bits: u64, count: usize) -> Vec<BigInt> {
    let e = value.enclosure(bits);
    let scale = BigInt::one() << bits;
    // Interval [ln/ld, hn/hd]; the map x ↦ 1/(x − t) swaps the ends.
    let (mut ln, mut ld) = (e.lower_scaled().clone(), scale.clone());
    let (mut hn, mut hd) = (e.upper_scaled().clone(), scale);
    let mut out = Vec::new();
    while out.len() < count {
        let t = ln.div_floor(&ld);
        if t != hn.div_floor(&hd) {
            break;
        }
        let lo_rem = &ln - &t * &ld;
        let hi_rem = &hn - &t * &hd;
        if lo_rem.is_zero() {
            // lower end sits on t; θ − t may be arbitrarily small.
            break;
        }
        out.push(t);
        (ln, ld, hn, hd) = (hd, hi_rem, ld, lo_rem);
    }
    out
}

pub fn convergents(
    theta: &Algebraic,
    count: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<Convergent>, AlgebraicError> {
    let quotients = partial_quotients(theta, count, policy)?;
    let (mut p, mut q, mut p1, mut q1) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(quotients.len());
    for (index, a) in quotients.into_iter().enumerate() {
        let np = &a * &p + &p1;
        let nq = &a * &q + &q1;
        p1 = std::mem::replace(&mut p, np);
        q1 = std::mem::replace(&mut q, nq);
        out.push(Convergent {
            index,
            partial_quotient: a,
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(out)
}

/// Convergents with certified errors `|θ − pₙ/qₙ|`.
pub fn cf_expand(
    theta: &Algebraic,
    count: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<ConvergentRecord>, AlgebraicError> {
    let value = theta.value();
    convergents(theta, count, policy)?
        .into_par_iter()
        .map(|c| {
            let error =
                value.abs_diff_rational(&BigRational::new(c.p.clone(), c.q.clone()), policy)?;
            Ok(ConvergentRecord {
                index: c.index,
                partial_quotient: c.partial_quotient,
                p: c.p,
                q: c.q,
                error,
            })
        })
        .collect()
}

/// All reduced `p/q` with `1 ≤ q ≤ q_max` and `|θ − p/q| < 1/(2q²)`, by
/// increasing `q`.
pub fn legendre_filter(
    theta: &Algebraic,
    q_max: u64,
    policy: &PrecisionPolicy,
) -> Result<Vec<(BigInt, u64)>, AlgebraicError> {
    let value = theta.value();
    let hits: Vec<Option<(BigInt, u64)>> = (1..=q_max)
        .into_par_iter()
        .map(|q| legendre_test(&value, q, policy))
        .collect::<Result<_, _>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// Only the nearest `p` can pass: `|qθ − p| < 1/(2q) ≤ 1/2`.
fn legendre_test(
    value: &ExactReal,
    q: u64,
    policy: &PrecisionPolicy,
) -> Result<Option<(BigInt, u64)>, AlgebraicError> {
    let qq = BigUint::from(q);
    let scaled = value.scale(&qq);
    let p = scaled.nearest_integer();
    if !p.gcd(&BigInt::from(q)).is_one() {
        return Ok(None);
    }
    let two_q = BigInt::from(2 * q);
    if let Some(r) = scaled.as_rational() {
        let gap =
            (r - BigRational::from_integer(p.clone())).abs() * BigRational::from_integer(two_q);
        return Ok((gap < BigRational::one()).then_some((p, q)));
    }
    let pass = policy.refine(|bits| {
        let dist = scaled.enclosure(bits).distance_to(&p);
        let one = BigInt::one() << bits;
        if dist.upper_scaled() * &two_q < one {
            Some(true)
        } else if dist.lower_scaled() * &two_q >= one {
            Some(false)
        } else {
            None
        }
    })?;
    Ok(pass.then_some((p, q)))
}
