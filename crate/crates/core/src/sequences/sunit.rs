use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::SequenceError;
use crate::arith::{is_s_unit, rational_height, v_p_rational, PrimeSet};

#[derive(Debug, Clone, PartialEq)]
pub struct SUnitSolution {
    pub x1: BigRational,
    pub x2: BigRational,
    pub h1: f64,
    pub h2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SUnitReport {
    pub solutions: Vec<SUnitSolution>,
    /// Every exponent of both coordinates was searched within `[−E, E]`.
    pub radius: u32,
    pub max_height: f64,
}

/// Solutions of `a₁x₁ + a₂x₂ = 1` in S-units whose exponents on both
/// coordinates lie in `[−E, E]`, sorted by `max(h(x₁), h(x₂))` then `x₁`.
pub fn sunit_solve(
    a1: &BigRational,
    a2: &BigRational,
    s: &PrimeSet,
    e: u32,
) -> Result<SUnitReport, SequenceError> {
    if a1.is_zero() || a2.is_zero() || e == 0 {
        return Err(SequenceError::InvalidInput(
            "need nonzero coefficients and E >= 1".into(),
        ));
    }
    let radius = e as i64;
    let mut candidates = vec![BigRational::one()];
    for &l in s.primes() {
        let l = BigRational::from_integer(l.into());
        let mut next = Vec::with_capacity(candidates.len() * (2 * e as usize + 1));
        for c in &candidates {
            for k in -(e as i32)..=(e as i32) {
                next.push(c * num_traits::Pow::pow(&l, k));
            }
        }
        candidates = next;
    }
    let in_box = |x: &BigRational| {
        is_s_unit(x, s)
            && s.primes()
                .iter()
                .all(|&l| v_p_rational(l, x).is_ok_and(|v| v.abs() <= radius))
    };
    let mut solutions: Vec<SUnitSolution> = candidates
        .into_par_iter()
        .flat_map_iter(|c| [c.clone(), -c])
        .filter_map(|x1| {
            let x2 = (BigRational::one() - a1 * &x1) / a2;
            in_box(&x2).then(|| SUnitSolution {
                h1: rational_height(&x1),
                h2: rational_height(&x2),
                x1,
                x2,
            })
        })
        .collect();
    solutions.sort_by(|a, b| {
        a.h1.max(a.h2)
            .total_cmp(&b.h1.max(b.h2))
            .then_with(|| a.x1.cmp(&b.x1))
    });
    let max_height = solutions.iter().map(|s| s.h1.max(s.h2)).fold(0.0, f64::max);
    Ok(SUnitReport {
        solutions,
        radius: e,
        max_height,
    })
}
