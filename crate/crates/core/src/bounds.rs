//! Evaluators for lower bounds of linear forms in logarithms, their p-adic
//! counterparts, and the inversion of `x ≤ K (log(x/H))^e`.
//!
//! Every `log X` below is taken as `log max{3, X}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Products of heights above this are refused; the evaluators work in `f64`.
pub const MAX_HEIGHT_PRODUCT: f64 = 1e280;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} requires |b_n| = 1")]
    NeedsUnitLastCoefficient(&'static str),
    #[error("{0} needs at least two logarithms")]
    NeedsTwoLogs(&'static str),
    #[error("{0} needs a prime p and delta")]
    MissingPadicData(&'static str),
}

/// Data of a linear form `b₁ log α₁ + … + bₙ log αₙ`: coefficients, clamped
/// heights `h*(αⱼ)`, field degree, and the p-adic extras.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogFormInput {
    pub coefficients: Vec<i64>,
    pub heights: Vec<f64>,
    pub degree: u32,
    #[serde(default)]
    pub prime: Option<u64>,
    #[serde(default)]
    pub delta: Option<f64>,
    /// `Bₙ` with `B ≥ Bₙ ≥ |bₙ|`; defaults to `|bₙ|`.
    #[serde(default)]
    pub b_n_cap: Option<f64>,
}

impl LogFormInput {
    pub fn new(coefficients: Vec<i64>, heights: Vec<f64>, degree: u32) -> Result<Self, BoundError> {
        let input = LogFormInput {
            coefficients,
            heights,
            degree,
            prime: None,
            delta: None,
            b_n_cap: None,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn with_padic(
        mut self,
        prime: u64,
        delta: f64,
        b_n_cap: Option<f64>,
    ) -> Result<Self, BoundError> {
        self.prime = Some(prime);
        self.delta = Some(delta);
        self.b_n_cap = b_n_cap;
        self.validate()?;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn validate(&self) -> Result<(), BoundError> {
        let bad = |m: String| Err(BoundError::InvalidInput(m));
        let n = self.coefficients.len();
        if n == 0 {
            return bad("need at least one logarithm".into());
        }
        if self.heights.len() != n {
            return bad(format!(
                "{n} coefficients but {} heights",
                self.heights.len()
            ));
        }
        if self.coefficients[n - 1] == 0 {
            return bad("last coefficient must be nonzero".into());
        }
        if let Some(h) = self
            .heights
            .iter()
            .find(|h| !(**h >= 1.0) || !h.is_finite())
        {
            return bad(format!("height {h} is not a finite value >= 1"));
        }
        if self.degree == 0 {
            return bad("degree must be at least 1".into());
        }
        if self.height_product() > MAX_HEIGHT_PRODUCT {
            return bad(format!("height product exceeds {MAX_HEIGHT_PRODUCT:e}"));
        }
        if let Some(p) = self.prime {
            if !crate::arith::is_prime_u64(p) {
                return bad(format!("{p} is not prime"));
            }
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d <= 0.5) {
                return bad(format!("delta {d} outside (0, 1/2]"));
            }
        }
        if let Some(cap) = self.b_n_cap {
            if !(cap >= self.last_abs() && cap <= quantity_b(self)) {
                return bad(format!("B_n = {cap} violates B >= B_n >= |b_n|"));
            }
        }
        Ok(())
    }

    fn last_abs(&self) -> f64 {
        self.coefficients[self.n() - 1].unsigned_abs() as f64
    }

    pub fn height_product(&self) -> f64 {
        self.heights.iter().product()
    }

    fn head_height_max(&self) -> f64 {
        // Empty maximum (n = 1) is taken as 1, the smallest possible h*.
        self.heights[..self.n() - 1]
            .iter()
            .copied()
            .fold(1.0, f64::max)
    }

    fn head_height_product(&self) -> f64 {
        self.heights[..self.n() - 1].iter().product()
    }
}

/// Constants `c₁ … c₇`. No values are known; the defaults are placeholders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub source: String,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c1: 1.0,
            c2: 1.0,
            c3: 1.0,
            c4: 1.0,
            c5: 1.0,
            c6: 1.0,
            c7: 1.0,
            source: "NON-NORMATIVE default".into(),
        }
    }
}

impl BoundConstants {
    pub fn validate(&self) -> Result<(), BoundError> {
        let all = [
            self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7,
        ];
        if all.iter().all(|c| *c > 0.0 && c.is_finite()) {
            Ok(())
        } else {
            Err(BoundError::InvalidInput(
                "constants must be positive and finite".into(),
            ))
        }
    }
}

fn log3(x: f64) -> f64 {
    x.max(3.0).ln()
}

fn n_pow_3n(n: usize) -> f64 {
    (n as f64).powi(3 * n as i32)
}

/// `B = max{3, |b₁|, …, |bₙ|}`.
pub fn quantity_b(input: &LogFormInput) -> f64 {
    input
        .coefficients
        .iter()
        .map(|b| b.unsigned_abs() as f64)
        .fold(3.0, f64::max)
}

/// `B′ = max{3, max_{j<n} (|bₙ|/h*ⱼ + |bⱼ|/h*ₙ)}`.
pub fn quantity_b_prime(input: &LogFormInput) -> Result<f64, BoundError> {
    let n = input.n();
    if n < 2 {
        return Err(BoundError::NeedsTwoLogs("B'"));
    }
    let bn = input.last_abs();
    let hn = input.heights[n - 1];
    Ok((0..n - 1)
        .map(|j| bn / input.heights[j] + input.coefficients[j].unsigned_abs() as f64 / hn)
        .fold(3.0, f64::max))
}

/// `B″ = max{3, max_j |bⱼ| h*ⱼ / h*ₙ}`.
pub fn quantity_b_double_prime(input: &LogFormInput) -> f64 {
    let hn = input.heights[input.n() - 1];
    input
        .coefficients
        .iter()
        .zip(&input.heights)
        .map(|(b, h)| b.unsigned_abs() as f64 * h / hn)
        .fold(3.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundVariant {
    /// `log B`
    LogB,
    /// `n^{3n} log B′`
    LogBPrime,
    /// `log B″`
    LogBDoublePrime,
    /// `n^{3n} log(B/h*ₙ)`, needs `|bₙ| = 1`
    LogBOverHn,
    /// `log(B max_{j<n} h*ⱼ / h*ₙ)`, needs `|bₙ| = 1`
    LogBHmaxOverHn,
}

impl LowerBoundVariant {
    pub const ALL: [LowerBoundVariant; 5] = [
        LowerBoundVariant::LogB,
        LowerBoundVariant::LogBPrime,
        LowerBoundVariant::LogBDoublePrime,
        LowerBoundVariant::LogBOverHn,
        LowerBoundVariant::LogBHmaxOverHn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LowerBoundVariant::LogB => "log_b",
            LowerBoundVariant::LogBPrime => "log_b_prime",
            LowerBoundVariant::LogBDoublePrime => "log_b_double_prime",
            LowerBoundVariant::LogBOverHn => "log_b_over_hn",
            LowerBoundVariant::LogBHmaxOverHn => "log_b_hmax_over_hn",
        }
    }
}

/// One evaluated lower bound for `log |Λ|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: LowerBoundVariant,
    pub b: f64,
    pub b_prime: Option<f64>,
    pub b_double_prime: f64,
    /// The argument of the log before flooring at 3.
    pub log_argument: f64,
    /// Right-hand side; a negative number bounding `log |Λ|` from below.
    pub value: f64,
}

pub fn lower_bound(
    input: &LogFormInput,
    constants: &BoundConstants,
    variant: LowerBoundVariant,
) -> Result<BoundReport, BoundError> {
    input.validate()?;
    let n = input.n();
    let nf = n as i32;
    let b = quantity_b(input);
    let b_prime = quantity_b_prime(input).ok();
    let b_double_prime = quantity_b_double_prime(input);
    let prod = input.height_product();
    let hn = input.heights[n - 1];
    let unit_last = input.last_abs() == 1.0;
    let (factor, arg) = match variant {
        LowerBoundVariant::LogB => (constants.c1.powi(nf), b),
        LowerBoundVariant::LogBPrime => {
            let bp = b_prime.ok_or(BoundError::NeedsTwoLogs("log_b_prime"))?;
            (constants.c2.powi(nf) * n_pow_3n(n), bp)
        }
        LowerBoundVariant::LogBDoublePrime => (constants.c3.powi(nf), b_double_prime),
        LowerBoundVariant::LogBOverHn => {
            if !unit_last {
                return Err(BoundError::NeedsUnitLastCoefficient("log_b_over_hn"));
            }
            (constants.c4.powi(nf) * n_pow_3n(n), b / hn)
        }
        LowerBoundVariant::LogBHmaxOverHn => {
            if !unit_last {
                return Err(BoundError::NeedsUnitLastCoefficient("log_b_hmax_over_hn"));
            }
            (constants.c5.powi(nf), b * input.head_height_max() / hn)
        }
    };
    Ok(BoundReport {
        variant,
        b,
        b_prime,
        b_double_prime,
        log_argument: arg,
        value: -factor * prod * log3(arg),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PadicBranch {
    /// `B ≤ c₅ⁿ h*₁⋯h*ₙ Bₙ`.
    SmallB,
    /// Otherwise the valuation bound with `log max{3, B/h*ₙ}` applies.
    ValuationBound,
}

/// Upper bounds for `v_p(α₁^{b₁}⋯αₙ^{bₙ} − 1)`.
///
/// The hypothesis `v_p(bₙ) ≤ v_p(bⱼ)` is not checked; the numbers `αⱼ` are
/// not modeled, so the report records it as assumed by the caller.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PadicReport {
    pub b: f64,
    pub b_n: f64,
    pub t: f64,
    /// `c₁ⁿ p^D ∏h* log B`.
    pub plain: f64,
    /// `∏h* · log max{3, T}`.
    pub height_term: f64,
    /// `δB/(Bₙ c₃ⁿ)`.
    pub linear_term: f64,
    /// `c₂ⁿ p^D/(log p)² · max{…}`.
    pub combined: f64,
    /// `c₅ⁿ ∏h* Bₙ`, compared against `B`.
    pub small_b_threshold: f64,
    pub branch: PadicBranch,
    pub valuation_bound: f64,
    pub valuation_bound_hmax: f64,
    /// Shape of the open p-adic analogue with `n^{3n}`, only for `|bₙ| = 1`.
    pub conjectural: Option<f64>,
    pub valuation_hypothesis_assumed: bool,
}

pub fn padic_log_form_bound(
    input: &LogFormInput,
    constants: &BoundConstants,
) -> Result<PadicReport, BoundError> {
    input.validate()?;
    let n = input.n();
    if n < 2 {
        return Err(BoundError::NeedsTwoLogs("padic_log_form_bound"));
    }
    let (p, delta) = match (input.prime, input.delta) {
        (Some(p), Some(d)) => (p as f64, d),
        _ => return Err(BoundError::MissingPadicData("padic_log_form_bound")),
    };
    let nf = n as i32;
    let d = input.degree as i32;
    let b = quantity_b(input);
    let b_n = input.b_n_cap.unwrap_or_else(|| input.last_abs());
    let prod = input.height_product();
    let hn = input.heights[n - 1];
    let p_d = p.powi(d);
    let t = b_n / delta
        * constants.c4.powi(nf * nf)
        * p.powi((nf + 1) * d)
        * input.head_height_product();
    let height_term = prod * log3(t);
    let linear_term = delta * b / (b_n * constants.c3.powi(nf));
    let combined = constants.c2.powi(nf) * p_d / p.ln().powi(2) * height_term.max(linear_term);
    let small_b_threshold = constants.c5.powi(nf) * prod * b_n;
    let branch = if b <= small_b_threshold {
        PadicBranch::SmallB
    } else {
        PadicBranch::ValuationBound
    };
    let valuation_bound = constants.c6.powi(nf) * p_d * prod * log3(b / hn);
    let valuation_bound_hmax =
        constants.c7.powi(nf) * p_d * prod * log3(b * input.head_height_max() / hn);
    let conjectural = (input.last_abs() == 1.0)
        .then(|| constants.c1.powi(nf) * n_pow_3n(n) * p_d * prod * log3(b / hn));
    Ok(PadicReport {
        b,
        b_n,
        t,
        plain: constants.c1.powi(nf) * p_d * prod * log3(b),
        height_term,
        linear_term,
        combined,
        small_b_threshold,
        branch,
        valuation_bound,
        valuation_bound_hmax,
        conjectural,
        valuation_hypothesis_assumed: true,
    })
}

/// Two-logarithm p-adic bound `c₁ p^D h*₁ h*₂ (log B′)²` with
/// `B′ = max{3, b₁/h*₂ + b₂/h*₁}`.
pub fn two_log_padic_bound(
    b1: u64,
    b2: u64,
    h1: f64,
    h2: f64,
    p: u64,
    degree: u32,
    c1: f64,
) -> Result<f64, BoundError> {
    if b1 == 0 || b2 == 0 {
        return Err(BoundError::InvalidInput("b1, b2 must be positive".into()));
    }
    if !(h1 >= 1.0 && h2 >= 1.0) {
        return Err(BoundError::InvalidInput("heights must be >= 1".into()));
    }
    if !crate::arith::is_prime_u64(p) {
        return Err(BoundError::InvalidInput(format!("{p} is not prime")));
    }
    let b_prime = b1 as f64 / h2 + b2 as f64 / h1;
    Ok(c1 * (p as f64).powi(degree as i32) * h1 * h2 * log3(b_prime).powi(2))
}

/// Largest `x ≥ 3H` with `x ≤ K (log(x/H))^e`, or `None` if there is none.
///
/// On `[3H, ∞)` the gap `K (log(x/H))^e − x` is concave for `e ∈ {1, 2}`, so
/// the admissible set is an interval; its right end is found by bracketing
/// and bisection to relative accuracy 1e−12.
pub fn invert_linear_log(k: f64, h: f64, e: u32) -> Result<Option<f64>, BoundError> {
    if !(k > 0.0 && k.is_finite()) || !(h > 0.0 && h.is_finite()) {
        return Err(BoundError::InvalidInput("K and H must be positive".into()));
    }
    if e != 1 && e != 2 {
        return Err(BoundError::InvalidInput(format!(
            "exponent {e} not in {{1, 2}}"
        )));
    }
    let ei = e as i32;
    let gap = |x: f64| k * (x / h).ln().powi(ei) - x;
    let slope = |x: f64| k * e as f64 * (x / h).ln().powi(ei - 1) / x - 1.0;
    let x_min = 3.0 * h;
    let mut lo = x_min;
    if gap(lo) < 0.0 {
        // Move to the maximizer of the gap, where the slope changes sign.
        if slope(lo) <= 0.0 {
            return Ok(None);
        }
        let mut hi = lo * 2.0;
        while slope(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        let (mut a, mut b) = (lo, hi);
        while b - a > 1e-13 * b {
            let m = 0.5 * (a + b);
            if slope(m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        lo = a;
        if gap(lo) < 0.0 && gap(b) < 0.0 {
            return Ok(None);
        }
        if gap(lo) < 0.0 {
            lo = b;
        }
    }
    let mut hi = lo.max(1.0) * 2.0;
    while gap(hi) >= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi {
        let m = 0.5 * (lo + hi);
        if gap(m) >= 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(Some(lo))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    /// `K = δ⁻¹ c₄ⁿ n^{3n} h*₁⋯h*ₙ`.
    pub k: f64,
    pub h_n: f64,
    /// Bound on `B`.
    pub bound: f64,
    pub ratio: f64,
    /// False when `x ≤ K log(x/h*ₙ)` fails for every `x ≥ 3h*ₙ`, in which
    /// case `B < 3h*ₙ` and the bound is `3h*ₙ`.
    pub crossing: bool,
}

/// Bound on `B` from `log|Λ| ≤ −δB` combined with the `B/h*ₙ` lower bound.
pub fn coefficient_bound(
    input: &LogFormInput,
    constants: &BoundConstants,
    delta: f64,
) -> Result<CoefficientBoundReport, BoundError> {
    input.validate()?;
    if input.last_abs() != 1.0 {
        return Err(BoundError::NeedsUnitLastCoefficient("coefficient_bound"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(BoundError::InvalidInput(format!(
            "delta {delta} outside (0, 1)"
        )));
    }
    let n = input.n();
    let h_n = input.heights[n - 1];
    let k = constants.c4.powi(n as i32) * n_pow_3n(n) * input.height_product() / delta;
    let solved = invert_linear_log(k, h_n, 1)?;
    let bound = solved.unwrap_or(3.0 * h_n);
    Ok(CoefficientBoundReport {
        k,
        h_n,
        bound,
        ratio: bound / h_n,
        crossing: solved.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(b: &[i64], h: &[f64]) -> LogFormInput {
        LogFormInput::new(b.to_vec(), h.to_vec(), 1).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn quantities() {
        let x = input(&[10, 1], &[1.0, 5.0]);
        assert_eq!(quantity_b(&x), 10.0);
        assert_eq!(quantity_b_prime(&x).unwrap(), 3.0);
        assert_eq!(quantity_b_double_prime(&x), 3.0);
        assert_eq!(quantity_b(&input(&[1, -3, 2], &[1.0; 3])), 3.0);
        assert!(quantity_b_prime(&input(&[5], &[2.0])).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let c = BoundConstants::default();
        let one = input(&[5], &[2.0]);
        let r = lower_bound(&one, &c, LowerBoundVariant::LogB).unwrap();
        assert!(rel(r.value, -2.0 * 5f64.ln()) < 1e-15);
        let two = input(&[10, 1], &[1.0, 5.0]);
        let r = lower_bound(&two, &c, LowerBoundVariant::LogBPrime).unwrap();
        assert!(rel(r.value, -64.0 * 5.0 * 3f64.ln()) < 1e-15);
        // h*ₙ = B makes B/h*ₙ = 1, floored to 3.
        let r = lower_bound(
            &input(&[7, 1], &[1.0, 7.0]),
            &c,
            LowerBoundVariant::LogBOverHn,
        )
        .unwrap();
        assert_eq!(r.log_argument, 1.0);
        assert!(rel(r.value, -64.0 * 7.0 * 3f64.ln()) < 1e-15);
        assert_eq!(
            lower_bound(
                &input(&[7, 2], &[1.0, 7.0]),
                &c,
                LowerBoundVariant::LogBHmaxOverHn
            ),
            Err(BoundError::NeedsUnitLastCoefficient("log_b_hmax_over_hn"))
        );
    }

    #[test]
    fn input_validation() {
        assert!(LogFormInput::new(vec![1, 0], vec![1.0, 1.0], 1).is_err());
        assert!(LogFormInput::new(vec![1, 1], vec![0.5, 1.0], 1).is_err());
        assert!(LogFormInput::new(vec![1, 1], vec![1e150, 1e150], 1).is_err());
        let x = input(&[4, 1], &[1.0, 1.0]);
        assert!(x.clone().with_padic(4, 0.5, None).is_err());
        assert!(x.clone().with_padic(3, 0.6, None).is_err());
        assert!(x.clone().with_padic(3, 0.5, Some(5.0)).is_err());
        assert!(x.with_padic(3, 0.5, Some(2.0)).is_ok());
    }

    #[test]
    fn padic_example() {
        let x = input(&[1, 1], &[1.0, 1.0])
            .with_padic(3, 0.5, Some(1.0))
            .unwrap();
        let r = padic_log_form_bound(&x, &BoundConstants::default()).unwrap();
        // T = Bₙ/δ · p^{(n+1)D} = 2 · 27.
        assert_eq!(r.t, 54.0);
        assert!(rel(r.height_term, 54f64.ln()) < 1e-15);
        assert_eq!(r.branch, PadicBranch::ValuationBound);
        // B/h*ₙ = 3 → log 3.
        assert!(rel(r.valuation_bound, 3.0 * 3f64.ln()) < 1e-15);
        assert!(r.valuation_hypothesis_assumed);
        let small = input(&[1, 1], &[2.0, 2.0])
            .with_padic(3, 0.5, Some(1.0))
            .unwrap();
        assert_eq!(
            padic_log_form_bound(&small, &BoundConstants::default())
                .unwrap()
                .branch,
            PadicBranch::SmallB
        );
        assert!(
            padic_log_form_bound(&input(&[1, 1], &[1.0, 1.0]), &BoundConstants::default()).is_err()
        );
    }

    #[test]
    fn two_log_examples() {
        let v = two_log_padic_bound(1, 1, 1.0, 1.0, 2, 1, 1.0).unwrap();
        assert!(rel(v, 2.0 * 3f64.ln().powi(2)) < 1e-15);
        let big = two_log_padic_bound(100, 1, 1.0, 50.0, 2, 1, 1.0).unwrap();
        assert!(rel(big, 2.0 * 50.0 * 3f64.ln().powi(2)) < 1e-15);
        let scaled = two_log_padic_bound(100, 1, 10.0, 500.0, 2, 1, 1.0).unwrap();
        assert!(rel(scaled, 100.0 * big) < 1e-12);
    }

    #[test]
    fn inversion() {
        let x = invert_linear_log(10.0, 1.0, 1).unwrap().unwrap();
        assert!((35.7715..=35.7716).contains(&x), "{x}");
        let y = invert_linear_log(10.0, 1.0, 2).unwrap().unwrap();
        assert!(rel(y, 10.0 * y.ln().powi(2)) < 1e-9);
        // K small: 3 > K log 3 and the slope K/x − 1 is negative from 3 on.
        assert_eq!(invert_linear_log(2.0, 1.0, 1).unwrap(), None);
        assert_eq!(invert_linear_log(2.7, 1.0, 1).unwrap(), None);
        // Starts below the curve at x = 3 but crosses it later.
        let z = invert_linear_log(2.4, 1.0, 2).unwrap().unwrap();
        assert!(z > 7.0 && rel(z, 2.4 * z.ln().powi(2)) < 1e-9);
        let w = invert_linear_log(5.0, 2.0, 2).unwrap().unwrap();
        assert!(w >= 6.0 && rel(w, 5.0 * (w / 2.0).ln().powi(2)) < 1e-9);
    }

    #[test]
    fn coefficient_bound_examples() {
        let c = BoundConstants::default();
        let r = coefficient_bound(&input(&[5, 1], &[1.0, 1.0]), &c, 0.5).unwrap();
        assert_eq!(r.k, 128.0);
        assert_eq!(r.bound, invert_linear_log(128.0, 1.0, 1).unwrap().unwrap());
        let r2 = coefficient_bound(&input(&[5, 1], &[1.0, 2.0]), &c, 0.5).unwrap();
        assert!(r2.bound > r.bound);
        assert!(rel(r2.ratio, r.ratio) < 1e-9);
        let r3 = coefficient_bound(&input(&[5, 1], &[1.0, 1.0]), &c, 0.25).unwrap();
        assert!(rel(r3.k, 2.0 * r.k) < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_input() -> impl Strategy<Value = LogFormInput> {
            (1usize..5).prop_flat_map(|n| {
                (
                    prop::collection::vec(-1000i64..1000, n),
                    prop::collection::vec(1.0f64..50.0, n),
                    1u32..4,
                )
                    .prop_filter_map("nonzero last", |(mut b, h, d)| {
                        let last = b.len() - 1;
                        if b[last] == 0 {
                            b[last] = 1;
                        }
                        LogFormInput::new(b, h, d).ok()
                    })
            })
        }

        proptest! {
            #[test]
            fn b_double_prime_is_scale_invariant(x in arb_input(), lambda in 1.0f64..20.0) {
                let mut y = x.clone();
                y.heights.iter_mut().for_each(|h| *h *= lambda);
                prop_assert!(rel(quantity_b_double_prime(&x), quantity_b_double_prime(&y)) < 1e-12);
                prop_assert_eq!(quantity_b(&x), quantity_b(&y));
                if x.n() >= 2 {
                    let bp = quantity_b_prime(&x).unwrap();
                    prop_assert!(bp <= (x.last_abs() + x.coefficients.iter().map(|b| b.unsigned_abs() as f64).fold(0.0, f64::max)).max(3.0));
                    prop_assert!(bp <= 2.0 * quantity_b(&x));
                }
            }

            #[test]
            fn bounds_weaken_with_height(x in arb_input(), j in 0usize..4, bump in 1.0f64..3.0) {
                let j = j % x.n();
                let mut y = x.clone();
                y.heights[j] *= bump;
                let mut z = x.clone();
                let b0 = z.coefficients[0];
                z.coefficients[0] = if b0 < 0 { b0 - 7 } else { b0 + 7 };
                let c = BoundConstants::default();
                for v in LowerBoundVariant::ALL {
                    for other in [&y, &z] {
                        if let (Ok(a), Ok(b)) = (lower_bound(&x, &c, v), lower_bound(other, &c, v)) {
                            prop_assert!(b.value <= a.value + 1e-12 * a.value.abs(), "{:?}", v);
                        }
                    }
                }
            }

            #[test]
            fn unit_last_coefficient_links_b_prime_to_b_over_h(b0 in prop::collection::vec(-500i64..500, 1..4), hn in 1.0f64..100.0) {
                let mut b = b0.clone();
                b.push(1);
                let mut h = vec![1.0; b0.len()];
                h.push(hn);
                let x = LogFormInput::new(b.clone(), h, 1).unwrap();
                let raw: f64 = b0.iter().map(|bj| 1.0 + bj.unsigned_abs() as f64 / hn).fold(f64::MIN, f64::max);
                let big = b.iter().map(|v| v.unsigned_abs() as f64).fold(0.0, f64::max);
                prop_assert!(big / hn <= raw + 1e-12);
                prop_assert!(raw <= 1.0 + big / hn + 1e-12);
                prop_assert_eq!(quantity_b_prime(&x).unwrap(), raw.max(3.0));
            }

            #[test]
            fn inversion_contract(k in 1.0f64..1e6, h in 1.0f64..1e3, e in 1u32..3) {
                if let Some(x) = invert_linear_log(k, h, e).unwrap() {
                    let f = |x: f64| k * (x / h).ln().powi(e as i32);
                    prop_assert!(x >= 3.0 * h);
                    prop_assert!(x <= f(x) * (1.0 + 1e-9));
                    let y = x * (1.0 + 1e-6);
                    prop_assert!(y > f(y));
                }
            }
        }
    }
}
