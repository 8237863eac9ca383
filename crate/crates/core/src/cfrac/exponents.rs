//! Finite-range estimators for approximation exponents.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::cf_expand;
use crate::algebraic::{
    fracpart_power_rational, liouville_constant, Algebraic, AlgebraicError, Distance,
    PrecisionPolicy,
};
use crate::arith::ln_bigint_abs;
use crate::series::ExponentSeries;

/// `μₙ = −ln|θ − pₙ/qₙ| / ln qₙ` over the first `count` convergents.
pub fn irrationality_exponent_series(
    theta: &Algebraic,
    count: usize,
    policy: &PrecisionPolicy,
) -> Result<ExponentSeries, AlgebraicError> {
    if count < 3 {
        return Err(AlgebraicError::InvalidInput(
            "need at least 3 convergents".into(),
        ));
    }
    let records = cf_expand(theta, count, policy)?;
    let mut series = ExponentSeries::new("mu", 0, count as u64 - 1);
    for r in records {
        let n = r.index as u64;
        if r.q.is_one() {
            series.exclude(n, "q = 1");
            continue;
        }
        let Some((lo, hi)) = r.error.ln_bounds() else {
            series.exclude(n, "exact convergent");
            continue;
        };
        let lq = ln_bigint_abs(&r.q);
        series.push(n, -hi / lq, -lo / lq);
    }
    Ok(series)
}

/// `vₙ = −ln‖bⁿθ‖ / (n ln b)` for `1 ≤ n ≤ n_max`.
pub fn vb_series(
    theta: &Algebraic,
    b: u64,
    n_max: u32,
    policy: &PrecisionPolicy,
) -> Result<ExponentSeries, AlgebraicError> {
    if b < 2 || n_max == 0 {
        return Err(AlgebraicError::InvalidInput(
            "need b >= 2 and n_max >= 1".into(),
        ));
    }
    let value = theta.value();
    let lb = (b as f64).ln();
    let base = BigUint::from(b);
    let dists: Vec<Distance> = (1..=n_max)
        .into_par_iter()
        .map(|n| value.scale(&base.pow(n)).nearest_int_distance(policy))
        .collect::<Result<_, _>>()?;
    let mut series = ExponentSeries::new(format!("v_{b}"), 1, n_max as u64);
    for (n, d) in (1..=n_max as u64).zip(dists) {
        match d.ln_bounds() {
            Some((lo, hi)) => series.push(n, -hi / (n as f64 * lb), -lo / (n as f64 * lb)),
            None => series.exclude(n, "integer"),
        }
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimultaneousRow {
    pub q: u64,
    /// Nearest integers to `qξ` and `qζ`.
    pub p: BigInt,
    pub r: BigInt,
    /// `ln max(‖qξ‖, ‖qζ‖)`, midpoint of the certified range.
    pub ln_max_distance: f64,
    /// `−ln max(‖qξ‖, ‖qζ‖) / ln q`.
    pub norm_exponent: f64,
    /// `1 + norm_exponent`: the exponent of `max |ξ − p/q|, |ζ − r/q|` against `q`.
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimultaneousReport {
    pub rows: Vec<SimultaneousRow>,
    /// Exponent of `max |ξ − p/q|, |ζ − r/q|`, indexed by `q`.
    pub series: ExponentSeries,
    /// Same data on the `‖·‖` scale.
    pub norm_series: ExponentSeries,
}

impl SimultaneousReport {
    /// Rows whose exponent beats every smaller `q`.
    pub fn running_best(&self) -> Vec<&SimultaneousRow> {
        self.series
            .running_best()
            .iter()
            .map(|p| &self.rows[(p.index - 2) as usize])
            .collect()
    }
}

/// Exhaustive scan of `2 ≤ q ≤ q_max` for simultaneous approximations to
/// `ξ` and `ζ`. The caller is responsible for `1, ξ, ζ` being independent.
pub fn simultaneous_scan(
    xi: &Algebraic,
    zeta: &Algebraic,
    q_max: u64,
    policy: &PrecisionPolicy,
) -> Result<SimultaneousReport, AlgebraicError> {
    if q_max < 2 {
        return Err(AlgebraicError::InvalidInput(
            "q_max must be at least 2".into(),
        ));
    }
    let (x, z) = (xi.value(), zeta.value());
    let scanned: Vec<(SimultaneousRow, f64, f64)> = (2..=q_max)
        .into_par_iter()
        .map(|q| {
            let k = BigUint::from(q);
            let (xq, zq) = (x.scale(&k), z.scale(&k));
            let dx = xq.nearest_int_distance(policy)?;
            let dz = zq.nearest_int_distance(policy)?;
            let ((a1, b1), (a2, b2)) = match (dx.ln_bounds(), dz.ln_bounds()) {
                (Some(u), Some(v)) => (u, v),
                _ => {
                    return Err(AlgebraicError::InvalidInput(format!(
                        "q = {q} makes a multiple integral; inputs are not independent"
                    )))
                }
            };
            let (lo, hi) = (a1.max(a2), b1.max(b2));
            let lq = (q as f64).ln();
            let row = SimultaneousRow {
                q,
                p: xq.nearest_integer(),
                r: zq.nearest_integer(),
                ln_max_distance: 0.5 * (lo + hi),
                norm_exponent: -0.5 * (lo + hi) / lq,
                exponent: 1.0 - 0.5 * (lo + hi) / lq,
            };
            Ok((row, -hi / lq, -lo / lq))
        })
        .collect::<Result<_, _>>()?;
    let mut series = ExponentSeries::new("mu_simultaneous", 1, q_max);
    let mut norm_series = ExponentSeries::new("simultaneous_norm", 1, q_max);
    series.exclude(1, "q = 1");
    norm_series.exclude(1, "q = 1");
    let mut rows = Vec::with_capacity(scanned.len());
    for (row, lo, hi) in scanned {
        series.push(row.q, 1.0 + lo, 1.0 + hi);
        norm_series.push(row.q, lo, hi);
        rows.push(row);
    }
    Ok(SimultaneousReport {
        rows,
        series,
        norm_series,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuReport {
    pub series: ExponentSeries,
    /// `ln C_ξ`, the ceiling for `νₙ` up to an `O(1/n)` term.
    pub ln_c: f64,
    /// Best known effective upper bound for `ν(ξ)` where one is tabulated.
    pub reference: Option<f64>,
}

/// Tabulated effective upper bounds for `ν`.
pub fn nu_reference(xi: &Algebraic) -> Option<f64> {
    match xi {
        Algebraic::Rational(r) if r == &BigRational::new(3.into(), 2.into()) => Some(0.5443),
        Algebraic::Quadratic(q) if q.to_string() == "quad(0,1,1,2)" => Some(0.595),
        _ => None,
    }
}

/// `νₙ = −ln‖ξⁿ‖ / n` for `1 ≤ n ≤ n_max`, `ξ > 1`; integer powers are
/// excluded.
pub fn nu_series(
    xi: &Algebraic,
    n_max: u32,
    policy: &PrecisionPolicy,
) -> Result<NuReport, AlgebraicError> {
    if n_max == 0 {
        return Err(AlgebraicError::InvalidInput(
            "n_max must be positive".into(),
        ));
    }
    let ln_c = liouville_constant(xi)?.ln();
    let value = xi.value();
    let fracpart = match xi {
        Algebraic::Rational(r) if r.denom() > &BigInt::one() => Some(r),
        _ => None,
    };
    let dists: Vec<Option<(f64, f64)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| match fracpart {
            Some(r) => {
                let d = fracpart_power_rational(r, n)?.distance;
                let l = ln_bigint_abs(d.numer()) - ln_bigint_abs(d.denom());
                Ok(Some((l, l)))
            }
            None => Ok(value.pow(n).nearest_int_distance(policy)?.ln_bounds()),
        })
        .collect::<Result<_, AlgebraicError>>()?;
    let mut series = ExponentSeries::new("nu", 1, n_max as u64);
    for (n, d) in (1..=n_max as u64).zip(dists) {
        match d {
            Some((lo, hi)) => series.push(n, -hi / n as f64, -lo / n as f64),
            None => series.exclude(n, "integer power"),
        }
    }
    Ok(NuReport {
        series,
        ln_c,
        reference: nu_reference(xi),
    })
}
