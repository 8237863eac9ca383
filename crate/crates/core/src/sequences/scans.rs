use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::SequenceError;
use crate::arith::{is_prime_u64, rational_height, s_part, PrimeSet, SPartDecomposition};
use crate::series::ExponentSeries;

/// `ln [v]_S / ln |v|` per index; zero and unit values are excluded.
pub fn spart_series<'a>(
    name: &str,
    items: impl IntoIterator<Item = (u64, &'a SPartDecomposition)>,
    first: u64,
    last: u64,
) -> ExponentSeries {
    let mut series = ExponentSeries::new(name, first, last);
    for (index, d) in items {
        match d.exponent() {
            Some(e) => series.push_exact(index, e),
            None if d.n.is_zero() => series.exclude(index, "zero value"),
            None => series.exclude(index, "|value| = 1"),
        }
    }
    series
}

/// Which of `a^m` and `b^n` dominates `a^m + b^n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerSumCase {
    /// `a^m ≥ b^(2n)`
    FirstDominates,
    /// `b^n ≥ a^(2m)`
    SecondDominates,
    Comparable,
}

impl PowerSumCase {
    pub fn name(self) -> &'static str {
        match self {
            PowerSumCase::FirstDominates => "first_dominates",
            PowerSumCase::SecondDominates => "second_dominates",
            PowerSumCase::Comparable => "comparable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumPoint {
    pub m: u32,
    pub n: u32,
    pub value: BigInt,
    pub case: PowerSumCase,
}

/// `a^m + b^n + 1` for `1 ≤ m ≤ m_max`, `1 ≤ n ≤ n_max`, row by row in `m`.
pub fn power_sum_grid(
    a: u64,
    b: u64,
    m_max: u32,
    n_max: u32,
) -> Result<Vec<PowerSumPoint>, SequenceError> {
    if a < 2 || b < 2 {
        return Err(SequenceError::InvalidInput("need a, b >= 2".into()));
    }
    let (a, b) = (BigUint::from(a), BigUint::from(b));
    let mut out = Vec::with_capacity((m_max * n_max) as usize);
    for m in 1..=m_max {
        let am = a.pow(m);
        for n in 1..=n_max {
            let bn = b.pow(n);
            let case = if am >= bn.pow(2) {
                PowerSumCase::FirstDominates
            } else if bn >= am.pow(2) {
                PowerSumCase::SecondDominates
            } else {
                PowerSumCase::Comparable
            };
            out.push(PowerSumPoint {
                m,
                n,
                value: BigInt::from(&am + &bn + 1u32),
                case,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TUnitSum {
    pub x: BigInt,
    /// Signed second term; the row records `x + y`.
    pub y: BigInt,
    pub sum: BigInt,
    pub decomposition: SPartDecomposition,
}

/// `x ± y` for coprime positive T-units `x ≥ y` with every exponent at most
/// `E`, decomposed over `S`.
pub fn t_unit_sum_scan(t: &PrimeSet, e: u32, s: &PrimeSet) -> Result<Vec<TUnitSum>, SequenceError> {
    if !t.is_disjoint(s) {
        return Err(SequenceError::InvalidInput(format!(
            "S = {s} and T = {t} overlap"
        )));
    }
    if e == 0 {
        return Err(SequenceError::InvalidInput("E must be at least 1".into()));
    }
    // units with their exponent vectors
    let mut units: Vec<(BigInt, Vec<u32>)> = vec![(BigInt::one(), vec![])];
    for &q in t.primes() {
        let mut next = Vec::new();
        for (u, exps) in &units {
            let mut v = u.clone();
            for k in 0..=e {
                let mut ex = exps.clone();
                ex.push(k);
                next.push((v.clone(), ex));
                v *= q;
            }
        }
        units = next;
    }
    units.sort();
    let coprime = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0);
    let mut pairs = Vec::new();
    for (i, (x, ex)) in units.iter().enumerate() {
        for (y, ey) in &units[..=i] {
            if coprime(ex, ey) {
                pairs.push((x.clone(), y.clone()));
                pairs.push((x.clone(), -y));
            }
        }
    }
    Ok(pairs
        .into_par_iter()
        .map(|(x, y)| {
            let sum = &x + &y;
            let decomposition = s_part(&sum, s);
            TUnitSum {
                x,
                y,
                sum,
                decomposition,
            }
        })
        .collect())
}

fn eval_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn degree(coeffs: &[BigInt]) -> usize {
    coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRow {
    pub n: i64,
    pub value: BigInt,
    pub decomposition: SPartDecomposition,
}

/// `f(n)` for `lo ≤ n ≤ hi`, coefficients from the constant term up.
pub fn poly_value_scan(
    coeffs: &[BigInt],
    lo: i64,
    hi: i64,
    s: &PrimeSet,
) -> Result<Vec<PolyRow>, SequenceError> {
    if degree(coeffs) < 2 {
        return Err(SequenceError::InvalidInput(
            "polynomial degree must be at least 2".into(),
        ));
    }
    if lo > hi {
        return Err(SequenceError::InvalidInput("empty range".into()));
    }
    Ok((lo..=hi)
        .into_par_iter()
        .map(|n| {
            let value = eval_poly(coeffs, &BigInt::from(n));
            let decomposition = s_part(&value, s);
            PolyRow {
                n,
                value,
                decomposition,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormRow {
    pub x: i64,
    pub y: i64,
    pub value: BigInt,
    pub decomposition: SPartDecomposition,
}

impl FormRow {
    pub fn height(&self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }
}

/// `F(x, y) = Σ cᵢ x^(d−i) yⁱ` over primitive pairs with `max(|x|, |y|) ≤ H`,
/// one representative of `±(x, y)`: `y > 0`, or `(1, 0)`.
pub fn binary_form_scan(
    coeffs: &[BigInt],
    height: u64,
    s: &PrimeSet,
) -> Result<Vec<FormRow>, SequenceError> {
    let d = coeffs.len().saturating_sub(1);
    if d < 2 || coeffs.iter().all(Zero::is_zero) {
        return Err(SequenceError::InvalidInput(
            "form degree must be at least 2".into(),
        ));
    }
    if height == 0 || height > i64::MAX as u64 {
        return Err(SequenceError::InvalidInput(
            "height bound out of range".into(),
        ));
    }
    let h = height as i64;
    let mut pairs = vec![(1i64, 0i64)];
    for y in 1..=h {
        for x in -h..=h {
            if x.gcd(&y) == 1 {
                pairs.push((x, y));
            }
        }
    }
    Ok(pairs
        .into_par_iter()
        .map(|(x, y)| {
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let value: BigInt = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * bx.pow((d - i) as u32) * by.pow(i as u32))
                .sum();
            let decomposition = s_part(&value, s);
            FormRow {
                x,
                y,
                value,
                decomposition,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierRow {
    pub q: u64,
    pub y: u64,
    /// `n / y^q` in lowest terms.
    pub a: BigRational,
    pub h_star: f64,
    /// `q / h*(A)`.
    pub ratio: f64,
}

/// For each prime `q ≤ q_max`, the `2 ≤ y ≤ y_max` minimizing the height of
/// `A = n / y^q` (ties to the smaller `y`).
pub fn almost_power_frontier(
    n: &BigUint,
    q_max: u64,
    y_max: u64,
) -> Result<Vec<FrontierRow>, SequenceError> {
    if n < &BigUint::from(2u32) || q_max < 2 || y_max < 2 {
        return Err(SequenceError::InvalidInput(
            "need n >= 2, q_max >= 2 and y_max >= 2".into(),
        ));
    }
    let n = BigInt::from(n.clone());
    let primes: Vec<u64> = (2..=q_max).filter(|&q| is_prime_u64(q)).collect();
    Ok(primes
        .into_par_iter()
        .map(|q| {
            let exp = u32::try_from(q).expect("prime fits in u32");
            let mut best: Option<(BigInt, u64, BigRational)> = None;
            for y in 2..=y_max {
                let a = BigRational::new(n.clone(), BigInt::from(y).pow(exp));
                let size = a.numer().abs().max(a.denom().clone());
                if best
                    .as_ref()
                    .is_none_or(|(b, _, _)| size.cmp(b) == Ordering::Less)
                {
                    best = Some((size, y, a));
                }
            }
            let (_, y, a) = best.expect("y range nonempty");
            let h_star = rational_height(&a).max(1.0);
            FrontierRow {
                q,
                y,
                a,
                h_star,
                ratio: q as f64 / h_star,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn set(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn power_sum_cases() {
        let g = power_sum_grid(2, 6, 20, 2).unwrap();
        let at = |m, n| g.iter().find(|p| p.m == m && p.n == n).unwrap();
        assert_eq!(at(5, 1).value, BigInt::from(39));
        assert_eq!(at(5, 1).case, PowerSumCase::Comparable);
        assert_eq!(at(20, 1).case, PowerSumCase::FirstDominates);
        assert_eq!(at(1, 2).case, PowerSumCase::SecondDominates);
        assert!(g.iter().all(|p| p.m >= 1 && p.n >= 1));
        assert!(power_sum_grid(1, 6, 2, 2).is_err());
    }

    #[test]
    fn t_unit_sums() {
        let rows = t_unit_sum_scan(&set(&[2, 3]), 3, &set(&[5, 7])).unwrap();
        let r = rows
            .iter()
            .find(|r| r.x == BigInt::from(9) && r.y == BigInt::from(8))
            .unwrap();
        assert_eq!(r.sum, BigInt::from(17));
        assert!(r.decomposition.s_part.is_one());
        for r in &rows {
            assert!(r.x.gcd(&r.y).is_one());
            assert_eq!(r.decomposition.reconstruct(), r.sum);
        }
        let twos = t_unit_sum_scan(&set(&[2]), 5, &set(&[3])).unwrap();
        let minus: Vec<i64> = twos
            .iter()
            .filter(|r| r.y == BigInt::from(-1))
            .map(|r| r.sum.to_i64().unwrap())
            .collect();
        assert_eq!(minus, vec![0, 1, 3, 7, 15, 31]);
        assert!(t_unit_sum_scan(&set(&[2]), 3, &set(&[2, 5])).is_err());
    }

    #[test]
    fn polynomial_and_form_values() {
        let f: Vec<BigInt> = vec![0.into(), 1.into(), 1.into()];
        let rows = poly_value_scan(&f, -1, 10, &set(&[2, 3])).unwrap();
        let r8 = rows.iter().find(|r| r.n == 8).unwrap();
        assert_eq!(r8.value, BigInt::from(72));
        assert_eq!(r8.decomposition.exponent(), Some(1.0));
        let series = spart_series(
            "poly",
            rows.iter().map(|r| ((r.n + 1) as u64, &r.decomposition)),
            0,
            11,
        );
        assert_eq!(series.excluded.len(), 2);
        assert!(poly_value_scan(&[1.into(), 1.into()], 1, 5, &set(&[2])).is_err());

        let sum_sq: Vec<BigInt> = vec![1.into(), 0.into(), 1.into()];
        let forms = binary_form_scan(&sum_sq, 3, &set(&[2])).unwrap();
        let one_one = forms.iter().find(|r| (r.x, r.y) == (1, 1)).unwrap();
        assert_eq!(one_one.decomposition.s_part, BigUint::from(2u32));
        assert!(forms
            .iter()
            .all(|r| r.x.gcd(&r.y) == 1 && (r.y > 0 || (r.x, r.y) == (1, 0))));
        // (1,0), then y = 1, 2, 3 with coprime x in [−3, 3]
        assert_eq!(forms.len(), 1 + 7 + 4 + 4);
    }

    #[test]
    fn frontier() {
        let rows = almost_power_frontier(&BigUint::from(1024u32), 7, 50).unwrap();
        let q5 = rows.iter().find(|r| r.q == 5).unwrap();
        assert_eq!((q5.y, q5.a.clone()), (4, BigRational::one()));
        assert_eq!((q5.h_star, q5.ratio), (1.0, 5.0));
        for r in &rows {
            let back = &r.a * BigRational::from_integer(BigInt::from(r.y).pow(r.q as u32));
            assert_eq!(back, BigRational::from_integer(1024.into()));
        }
        assert!(almost_power_frontier(&BigUint::from(10u32), 5, 1).is_err());
    }
}
