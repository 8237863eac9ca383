//! Roots of `X² − tX + m` in ℚ_p for odd unramified `p`, and the scan of
//! `v_p(bα − a)` against `|ab|`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{is_prime_u64, mul_mod, pow_mod};
use crate::series::ExponentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("p = 2 is not supported")]
    TwoUnsupported,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p divides the discriminant {0}")]
    Ramified(BigInt),
    #[error("discriminant {0} is not a square mod p")]
    NonResidue(BigInt),
    #[error("discriminant {0} is a perfect square; the roots are rational")]
    RationalRoots(BigInt),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("valuation still saturated at precision {0}")]
    Budget(u32),
}

/// A root `α ∈ ℤ_p` of `X² − tX + m`, known modulo `p^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicQuadratic {
    p: u64,
    precision: u32,
    t: BigInt,
    m: BigInt,
    branch: u8,
    residue: BigUint,
}

impl PadicQuadratic {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `(t, m)` of `X² − tX + m`.
    pub fn coefficients(&self) -> (&BigInt, &BigInt) {
        (&self.t, &self.m)
    }

    pub fn branch(&self) -> u8 {
        self.branch
    }

    /// `α mod p^K` in `[0, p^K)`.
    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.precision)
    }

    /// Same root to a different precision.
    pub fn with_precision(&self, k: u32) -> Result<Self, PadicError> {
        if k <= self.precision {
            let mut out = self.clone();
            out.precision = k.max(1);
            out.residue = &self.residue % out.modulus();
            return Ok(out);
        }
        hensel_root(&self.t, &self.m, self.p, k, self.branch)
    }

    /// The other root, `t − α`.
    pub fn conjugate(&self) -> Self {
        let modulus = BigInt::from(self.modulus());
        let other = (&self.t - BigInt::from(self.residue.clone())).mod_floor(&modulus);
        PadicQuadratic {
            branch: 1 - self.branch,
            residue: other.to_biguint().expect("reduced"),
            ..self.clone()
        }
    }
}

/// Lift a root of `X² − tX + m` from `ℤ/p` to `ℤ/p^K`.
///
/// The two roots mod `p` are `(t ± √disc)/2`; `branch` 0 picks the one with
/// the smaller representative in `[0, p)`, branch 1 the other.
pub fn hensel_root(
    t: &BigInt,
    m: &BigInt,
    p: u64,
    k: u32,
    branch: u8,
) -> Result<PadicQuadratic, PadicError> {
    if p == 2 {
        return Err(PadicError::TwoUnsupported);
    }
    if !is_prime_u64(p) {
        return Err(PadicError::NotPrime(p));
    }
    if k == 0 || branch > 1 {
        return Err(PadicError::InvalidInput(
            "need K >= 1 and branch 0 or 1".into(),
        ));
    }
    let disc = t * t - BigInt::from(4) * m;
    if !disc.is_negative() && disc.magnitude().sqrt().pow(2) == *disc.magnitude() {
        return Err(PadicError::RationalRoots(disc));
    }
    let pb = BigInt::from(p);
    let disc_p = disc.mod_floor(&pb).to_u64().expect("reduced");
    if disc_p == 0 {
        return Err(PadicError::Ramified(disc));
    }
    let s = sqrt_mod_prime(disc_p, p).ok_or_else(|| PadicError::NonResidue(disc.clone()))?;
    let t_p = t.mod_floor(&pb).to_u64().expect("reduced");
    let half = (p + 1) / 2;
    let r1 = mul_mod((t_p + s) % p, half, p);
    let r2 = mul_mod((t_p + p - s) % p, half, p);
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    let mut x = BigInt::from(if branch == 0 { lo } else { hi });

    // Newton: x ← x − f(x)/f'(x), doubling the precision each step.
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let modulus = BigInt::from(p).pow(prec);
        let f = (&x * &x - t * &x + m).mod_floor(&modulus);
        let df = (BigInt::from(2) * &x - t).mod_floor(&modulus);
        let inv = mod_inverse(&df, &modulus).expect("f' is a unit when p does not divide disc");
        x = (&x - f * inv).mod_floor(&modulus);
    }
    Ok(PadicQuadratic {
        p,
        precision: k,
        t: t.clone(),
        m: m.clone(),
        branch,
        residue: x.to_biguint().expect("reduced"),
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Tonelli–Shanks; `None` for non-residues.
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("non-residue exists");
    let mut c = pow_mod(z, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    let mut tt = pow_mod(a, q, p);
    let mut mm = s;
    while tt != 1 {
        let mut i = 1;
        let mut t2 = mul_mod(tt, tt, p);
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (mm - i - 1), p);
        r = mul_mod(r, b, p);
        c = mul_mod(b, b, p);
        tt = mul_mod(tt, c, p);
        mm = i;
    }
    Some(r)
}

/// `v_p(bα − a)` as far as the precision allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearFormValuation {
    pub value: u32,
    /// `bα ≡ a (mod p^K)`: the true valuation is at least `value = K`.
    pub saturated: bool,
}

pub fn v_p_linear_form(
    alpha: &PadicQuadratic,
    a: &BigInt,
    b: &BigInt,
) -> Result<LinearFormValuation, PadicError> {
    if a.is_zero() || b.is_zero() {
        return Err(PadicError::InvalidInput("a and b must be nonzero".into()));
    }
    let modulus = BigInt::from(alpha.modulus());
    let mut x = (b * BigInt::from(alpha.residue.clone()) - a).mod_floor(&modulus);
    if x.is_zero() {
        return Ok(LinearFormValuation {
            value: alpha.precision,
            saturated: true,
        });
    }
    let p = BigInt::from(alpha.p);
    let mut v = 0;
    while x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    Ok(LinearFormValuation {
        value: v,
        saturated: false,
    })
}

/// Escalate the precision (doubling) until the valuation is exact.
pub fn v_p_linear_form_exact(
    alpha: &PadicQuadratic,
    a: &BigInt,
    b: &BigInt,
    max_precision: u32,
) -> Result<(u32, PadicQuadratic), PadicError> {
    let mut cur = alpha.clone();
    loop {
        let v = v_p_linear_form(&cur, a, b)?;
        if !v.saturated {
            return Ok((v.value, cur));
        }
        if cur.precision >= max_precision {
            return Err(PadicError::Budget(cur.precision));
        }
        cur = cur.with_precision((2 * cur.precision).min(max_precision))?;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultRow {
    pub a: i64,
    pub b: i64,
    pub valuation: u32,
    /// `v · ln p / ln |ab|`.
    pub exponent: f64,
}

impl MultRow {
    pub fn size(&self) -> u64 {
        self.a.unsigned_abs() * self.b.unsigned_abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultScanReport {
    /// Points indexed by `|ab|`; the tail starts at `⌈√X⌉`.
    pub series: ExponentSeries,
    pub rows: Vec<MultRow>,
    /// Precision that resolved every valuation.
    pub precision: u32,
}

impl MultScanReport {
    /// Largest exponent over rows with `|ab| ≥ from`; ties go to smaller
    /// `|ab|`, then smaller `b`, then smaller `a`.
    pub fn best_from(&self, from: u64) -> Option<&MultRow> {
        self.rows
            .iter()
            .filter(|r| r.size() >= from)
            .min_by(|x, y| {
                y.exponent
                    .total_cmp(&x.exponent)
                    .then(x.size().cmp(&y.size()))
                    .then(x.b.cmp(&y.b))
                    .then(x.a.cmp(&y.a))
            })
    }

    pub fn best(&self) -> Option<&MultRow> {
        self.best_from(2)
    }

    pub fn tail_best(&self) -> Option<&MultRow> {
        self.best_from(self.series.tail_from)
    }
}

/// All `(a, b)` with `b ≥ 1`, `a ≠ 0` and `2 ≤ |ab| ≤ X`; `(−a, −b)` gives
/// the same valuation and is omitted. `|ab| = 1` is excluded since `ln 1 = 0`.
pub fn mult_exponent_scan(
    alpha: &PadicQuadratic,
    x_max: u64,
    max_precision: u32,
) -> Result<MultScanReport, PadicError> {
    if x_max < 2 {
        return Err(PadicError::InvalidInput("X must be at least 2".into()));
    }
    let ln_p = (alpha.p as f64).ln();
    let tail_from = x_max.isqrt() + u64::from(x_max.isqrt().pow(2) < x_max);
    let mut alpha = alpha.clone();
    loop {
        let rows: Result<Vec<Vec<MultRow>>, PadicError> = (1..=x_max as i64)
            .into_par_iter()
            .map(|b| {
                let bound = x_max as i64 / b;
                let mut out = Vec::new();
                for a in (-bound..=bound).filter(|&a| a != 0 && (a.abs() * b) > 1) {
                    let v = v_p_linear_form(&alpha, &BigInt::from(a), &BigInt::from(b))?;
                    if v.saturated {
                        return Err(PadicError::Budget(v.value));
                    }
                    let size = (a.unsigned_abs() * b as u64) as f64;
                    out.push(MultRow {
                        a,
                        b,
                        valuation: v.value,
                        exponent: v.value as f64 * ln_p / size.ln(),
                    });
                }
                Ok(out)
            })
            .collect();
        match rows {
            Ok(rows) => {
                let rows: Vec<MultRow> = rows.into_iter().flatten().collect();
                let mut series = ExponentSeries::new("mu_mult", 1, x_max).with_tail_from(tail_from);
                series.exclude(1, "|ab| = 1");
                for r in &rows {
                    series.push_exact(r.size(), r.exponent);
                }
                return Ok(MultScanReport {
                    series,
                    rows,
                    precision: alpha.precision,
                });
            }
            Err(PadicError::Budget(k)) if k < max_precision => {
                alpha = alpha.with_precision((2 * k).min(max_precision))?;
            }
            Err(e) => return Err(e),
        }
    }
}
