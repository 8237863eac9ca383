//! S-parts and greatest prime factors of convergent numerators and
//! denominators.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebraic::{Algebraic, AlgebraicError, PrecisionPolicy};
use crate::arith::{
    factorize, ln_bigint_abs, s_part, v_p_int, ArithError, FactorBudget, PrimeSet,
    SPartDecomposition,
};
use crate::cfrac::convergents;
use crate::series::ExponentSeries;

#[derive(Debug, Error)]
pub enum SPartError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("could not certify {0}")]
    Certification(String),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Largest prime factor, or the largest one found when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreatestPrime {
    Exact(BigUint),
    AtLeast(BigUint),
}

impl GreatestPrime {
    pub fn value(&self) -> &BigUint {
        match self {
            GreatestPrime::Exact(p) | GreatestPrime::AtLeast(p) => p,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GreatestPrime::Exact(_))
    }
}

/// `P[n]` for `|n| ≥ 2`. An unfactored cofactor has no prime below the
/// trial-division bound, so it alone already forces `P[n] > 10⁵`.
fn greatest_prime(n: &BigInt, budget: &FactorBudget) -> Result<Option<GreatestPrime>, ArithError> {
    if n.magnitude() < &BigUint::from(2u32) {
        return Ok(None);
    }
    let map = factorize(n, budget)?;
    let found = map.largest_prime().cloned().unwrap_or_else(BigUint::one);
    Ok(Some(if map.is_complete() {
        GreatestPrime::Exact(found)
    } else {
        GreatestPrime::AtLeast(found.max(BigUint::from(100_003u32)))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentSPartRow {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub p_part: SPartDecomposition,
    pub q_part: SPartDecomposition,
    pub pq_part: SPartDecomposition,
    /// `ln [pₙqₙ]_S / ln |pₙqₙ|`, absent when `|pₙqₙ| ≤ 1`.
    pub exponent: Option<f64>,
    pub greatest_prime: Option<GreatestPrime>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentSPartScan {
    pub rows: Vec<ConvergentSPartRow>,
    pub series: ExponentSeries,
}

/// Decompose `pₙ`, `qₙ` and `pₙqₙ` over `S` for `0 ≤ n ≤ n_max`.
pub fn convergent_spart_scan(
    xi: &Algebraic,
    s: &PrimeSet,
    n_max: usize,
    budget: &FactorBudget,
    policy: &PrecisionPolicy,
) -> Result<ConvergentSPartScan, SPartError> {
    if xi.is_rational() {
        return Err(SPartError::InvalidInput("need an irrational number".into()));
    }
    let rows = convergents(xi, n_max + 1, policy)?
        .into_par_iter()
        .map(|c| {
            let pq = &c.p * &c.q;
            // P[pq] = max(P[p], P[q]); the factors are much cheaper apart.
            let gp = match (greatest_prime(&c.p, budget)?, greatest_prime(&c.q, budget)?) {
                (None, None) => None,
                (Some(a), None) | (None, Some(a)) => Some(a),
                (Some(a), Some(b)) => {
                    let exact = a.is_exact() && b.is_exact();
                    let m = a.value().max(b.value()).clone();
                    Some(if exact {
                        GreatestPrime::Exact(m)
                    } else {
                        GreatestPrime::AtLeast(m)
                    })
                }
            };
            let pq_part = s_part(&pq, s);
            Ok(ConvergentSPartRow {
                n: c.index,
                p_part: s_part(&c.p, s),
                q_part: s_part(&c.q, s),
                exponent: pq_part.exponent(),
                pq_part,
                greatest_prime: gp,
                p: c.p,
                q: c.q,
            })
        })
        .collect::<Result<Vec<_>, ArithError>>()?;
    let mut series = ExponentSeries::new("convergent_spart", 0, n_max as u64);
    for r in &rows {
        match r.exponent {
            Some(e) => series.push_exact(r.n as u64, e),
            None => series.exclude(r.n as u64, "|p_n q_n| <= 1"),
        }
    }
    Ok(ConvergentSPartScan { rows, series })
}

/// Split `n` into its S-free part and the exponents of the primes in `S`.
fn split(n: &BigInt, s: &PrimeSet) -> (BigInt, Vec<u32>) {
    let d = s_part(n, s);
    let exps = s
        .primes()
        .iter()
        .map(|&l| v_p_int(l, n).expect("n is nonzero"))
        .collect();
    (d.cofactor.abs(), exps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaQDecomposition {
    pub q: BigInt,
    /// `⌊qξ⌋`.
    pub p: BigInt,
    pub a_p: BigInt,
    pub a_q: BigInt,
    /// `bᵢ = v_ℓᵢ(q) − v_ℓᵢ(p)`, so that `q/p = (A_q/A_p) ∏ ℓᵢ^bᵢ`.
    pub exponents: Vec<i64>,
    /// `max(|bᵢ|, 3)`.
    pub big_b: u64,
    /// `max(ln A_q, ln A_p, 1)`.
    pub h_star: f64,
    /// Certified bounds on `|ξ (A_q/A_p) ∏ ℓᵢ^bᵢ − 1|`.
    pub lambda_lower: BigRational,
    pub lambda_upper: BigRational,
}

impl LambdaQDecomposition {
    /// `(A_q/A_p) ∏ ℓᵢ^bᵢ`, which equals `q/p`.
    pub fn recombine(&self, s: &PrimeSet) -> BigRational {
        s.primes().iter().zip(&self.exponents).fold(
            BigRational::new(self.a_q.clone(), self.a_p.clone()),
            |acc, (&l, &b)| {
                acc * num_traits::Pow::pow(BigRational::from_integer(l.into()), b as i32)
            },
        )
    }
}

pub fn lambda_q_decompose(
    xi: &Algebraic,
    q: &BigInt,
    s: &PrimeSet,
    policy: &PrecisionPolicy,
) -> Result<LambdaQDecomposition, SPartError> {
    let value = xi.value();
    if xi.is_rational() || value.sign() != std::cmp::Ordering::Greater {
        return Err(SPartError::InvalidInput(
            "need a positive irrational number".into(),
        ));
    }
    if !q.is_positive() {
        return Err(SPartError::InvalidInput("need q >= 1".into()));
    }
    let p = value.scale(q.magnitude()).floor();
    if p < BigInt::from(2) {
        return Err(SPartError::InvalidInput(format!(
            "p = floor(q xi) = {p} is below 2"
        )));
    }
    let (a_p, vp) = split(&p, s);
    let (a_q, vq) = split(q, s);
    let exponents: Vec<i64> = vq
        .iter()
        .zip(&vp)
        .map(|(&a, &b)| a as i64 - b as i64)
        .collect();
    let big_b = exponents
        .iter()
        .map(|b| b.unsigned_abs())
        .max()
        .unwrap_or(0)
        .max(3);
    let h_star = ln_bigint_abs(&a_q).max(ln_bigint_abs(&a_p)).max(1.0);
    // |ξ q/p − 1| = (q/p) |ξ − p/q|
    let scale = BigRational::new(q.clone(), p.clone());
    let dist = value.abs_diff_rational(&BigRational::new(p.clone(), q.clone()), policy)?;
    let (lambda_lower, lambda_upper) = (dist.lower() * &scale, dist.upper() * &scale);
    if !lambda_lower.is_positive() || lambda_upper > BigRational::new(BigInt::one(), p.clone()) {
        return Err(SPartError::Certification(format!(
            "0 < Lambda_q <= 1/p at q = {q}"
        )));
    }
    Ok(LambdaQDecomposition {
        q: q.clone(),
        p,
        a_p,
        a_q,
        exponents,
        big_b,
        h_star,
        lambda_lower,
        lambda_upper,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleDecomposition {
    pub n: usize,
    /// `(q_{n−1}, qₙ, q_{n+1})`.
    pub denominators: [BigInt; 3],
    /// `Qₙ = q_{n−1} qₙ q_{n+1}`.
    pub product: BigInt,
    /// S-free parts of the three factors.
    pub factor_parts: [BigInt; 3],
    /// `Aₙ`, the product of `factor_parts`.
    pub a: BigInt,
    pub exponents: Vec<u32>,
    /// `max(b_{i,n}, 3)`.
    pub big_b: u64,
    /// `max(ln Aₙ, 1)`.
    pub h_star: f64,
    /// `gcd(Qₙ, q_{n+1} − q_{n−1})`, a multiple of `qₙ`.
    pub gcd: BigInt,
    /// `ln [Qₙ]_S / ln Qₙ`.
    pub exponent: f64,
}

pub fn triple_decompose_scan(
    theta: &Algebraic,
    s: &PrimeSet,
    n_max: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<TripleDecomposition>, SPartError> {
    if theta.is_rational() {
        return Err(SPartError::InvalidInput("need an irrational number".into()));
    }
    if n_max == 0 {
        return Err(SPartError::InvalidInput("need n_max >= 1".into()));
    }
    let qs: Vec<BigInt> = convergents(theta, n_max + 2, policy)?
        .into_iter()
        .map(|c| c.q)
        .collect();
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let denominators = [qs[n - 1].clone(), qs[n].clone(), qs[n + 1].clone()];
            let product = &denominators[0] * &denominators[1] * &denominators[2];
            let gcd = product.gcd(&(&denominators[2] - &denominators[0]));
            if !(&gcd % &denominators[1]).is_zero() {
                return Err(SPartError::Certification(format!(
                    "q_n | gcd(Q_n, q_(n+1) - q_(n-1)) at n = {n}"
                )));
            }
            let factor_parts = denominators.clone().map(|d| split(&d, s).0);
            let a: BigInt = factor_parts.iter().product();
            let (a_check, exponents) = split(&product, s);
            debug_assert_eq!(a, a_check);
            let big_b = exponents.iter().copied().max().unwrap_or(0).max(3) as u64;
            let decomposition = s_part(&product, s);
            Ok(TripleDecomposition {
                n,
                h_star: ln_bigint_abs(&a).max(1.0),
                exponent: decomposition.exponent().unwrap_or(0.0),
                denominators,
                product,
                factor_parts,
                a,
                exponents,
                big_b,
                gcd,
            })
        })
        .collect()
}

/// Exponent series of `[Qₙ]_S` over `1 ≤ n ≤ n_max`.
pub fn triple_series(rows: &[TripleDecomposition], n_max: usize) -> ExponentSeries {
    let mut series = ExponentSeries::new("triple_spart", 1, n_max as u64);
    for r in rows {
        series.push_exact(r.n as u64, r.exponent);
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn pell_denominators() {
        let scan = convergent_spart_scan(
            &Algebraic::sqrt(2).unwrap(),
            &set(&[2]),
            12,
            &FactorBudget::default(),
            &policy(),
        )
        .unwrap();
        let qs: Vec<BigInt> = scan.rows.iter().map(|r| r.q.clone()).collect();
        assert_eq!(qs[..6], [1, 2, 5, 12, 29, 70].map(BigInt::from));
        assert_eq!(scan.rows[3].q_part.s_part, BigUint::from(4u32));
        assert_eq!(scan.rows[5].q_part.s_part, BigUint::from(2u32));
        // p₀q₀ = 1
        assert_eq!(scan.series.excluded.len(), 1);
        for r in &scan.rows {
            assert_eq!(r.pq_part.reconstruct(), &r.p * &r.q);
            assert!(r.exponent.is_none_or(|e| (0.0..=1.0).contains(&e)));
        }
        // p₄q₄ = 41·29
        assert_eq!(
            scan.rows[4].greatest_prime,
            Some(GreatestPrime::Exact(BigUint::from(41u32)))
        );
    }

    #[test]
    fn lambda_example() {
        let d = lambda_q_decompose(
            &Algebraic::sqrt(2).unwrap(),
            &BigInt::from(10),
            &set(&[2, 7]),
            &policy(),
        )
        .unwrap();
        assert_eq!(
            (d.p.clone(), d.a_p.clone(), d.a_q.clone()),
            (14.into(), 1.into(), 5.into())
        );
        assert_eq!(d.exponents, vec![0, -1]);
        assert_eq!(d.big_b, 3);
        assert!((d.h_star - 5f64.ln()).abs() < 1e-12);
        assert_eq!(
            d.recombine(&set(&[2, 7])),
            BigRational::new(5.into(), 7.into())
        );
        // q = 5, p = 7, both smooth over {5, 7}
        let smooth = lambda_q_decompose(
            &Algebraic::sqrt(2).unwrap(),
            &BigInt::from(5),
            &set(&[5, 7]),
            &policy(),
        )
        .unwrap();
        assert_eq!(smooth.h_star, 1.0);
        assert!(lambda_q_decompose(
            &Algebraic::sqrt(2).unwrap(),
            &BigInt::one(),
            &set(&[2]),
            &policy()
        )
        .is_err());
        assert!(lambda_q_decompose(
            &Algebraic::rational(3, 2),
            &BigInt::from(10),
            &set(&[2]),
            &policy()
        )
        .is_err());
    }

    #[test]
    fn triple_example() {
        let rows =
            triple_decompose_scan(&Algebraic::sqrt(2).unwrap(), &set(&[2, 3]), 20, &policy())
                .unwrap();
        let r = &rows[2];
        assert_eq!(r.n, 3);
        assert_eq!(r.product, BigInt::from(1740));
        assert_eq!(r.gcd, BigInt::from(12));
        // 1740 = 2²·3·5·29
        assert_eq!(
            (r.a.clone(), r.exponents.clone()),
            (BigInt::from(145), vec![2, 1])
        );
        for r in &rows {
            let smooth: BigInt = [2u32, 3]
                .iter()
                .zip(&r.exponents)
                .map(|(&l, &e)| BigInt::from(l).pow(e))
                .product();
            assert_eq!(&r.a * smooth, r.product);
            assert!(r.big_b >= 3 && r.h_star >= 1.0);
        }
        let series = triple_series(&rows, 20);
        assert!(series.tail_max().unwrap().value < 1.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn lambda_recombines(q in 2u64..1_000_000, which in 0usize..3) {
            let xi = [Algebraic::sqrt(2).unwrap(), Algebraic::golden_ratio(), Algebraic::root(5, 3).unwrap()][which].clone();
            let s = set(&[2, 3, 5, 7]);
            let d = lambda_q_decompose(&xi, &BigInt::from(q), &s, &policy()).unwrap();
            prop_assert_eq!(d.recombine(&s), BigRational::new(d.q.clone(), d.p.clone()));
            prop_assert!(d.lambda_upper <= BigRational::new(BigInt::one(), d.p.clone()));
        }
    }
}
