use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SequenceError;
use crate::arith::{factorize, v_p_int, FactorBudget, PrimeSet};

/// `uₙ = a₁u_{n−1} + … + a_k u_{n−k}` with initial terms `u₀ … u_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coefficients: Vec<BigInt>,
    initial: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn new(coefficients: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self, SequenceError> {
        if coefficients.is_empty() || coefficients.len() != initial.len() {
            return Err(SequenceError::InvalidInput(
                "need k >= 1 coefficients and exactly k initial terms".into(),
            ));
        }
        if coefficients.last().is_some_and(Zero::is_zero) {
            return Err(SequenceError::InvalidInput("a_k must be nonzero".into()));
        }
        if initial.iter().all(Zero::is_zero) {
            return Err(SequenceError::InvalidInput(
                "initial terms are all zero".into(),
            ));
        }
        Ok(RecurrenceSpec {
            coefficients,
            initial,
        })
    }

    pub fn from_i64(coefficients: &[i64], initial: &[i64]) -> Result<Self, SequenceError> {
        RecurrenceSpec::new(
            coefficients.iter().map(|&a| a.into()).collect(),
            initial.iter().map(|&u| u.into()).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// `X^k − a₁X^(k−1) − … − a_k`, coefficients from the constant term up.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        let k = self.order();
        let mut g = vec![BigInt::zero(); k + 1];
        g[k] = BigInt::one();
        for (i, a) in self.coefficients.iter().enumerate() {
            g[k - 1 - i] = -a;
        }
        g
    }
}

/// `u₀ … u_N`.
pub fn recurrence_values(spec: &RecurrenceSpec, n: usize) -> Vec<BigInt> {
    let mut u: Vec<BigInt> = spec.initial.iter().take(n + 1).cloned().collect();
    while u.len() <= n {
        let len = u.len();
        let next = spec
            .coefficients
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, a)| acc + a * &u[len - 1 - i]);
        u.push(next);
    }
    u
}

/// `uₙ` from the `n`-th power of the companion matrix.
pub fn companion_value(spec: &RecurrenceSpec, n: u64) -> BigInt {
    let k = spec.order();
    let mut m = vec![vec![BigInt::zero(); k]; k];
    m[0].clone_from(&spec.coefficients);
    for i in 1..k {
        m[i][i - 1] = BigInt::one();
    }
    let mut acc: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &m);
        }
        m = mat_mul(&m, &m);
        e >>= 1;
    }
    // state (u_{k−1}, …, u₀); uₙ is the last entry of Mⁿ·state
    let state: Vec<&BigInt> = spec.initial.iter().rev().collect();
    acc[k - 1].iter().zip(state).map(|(a, s)| a * s).sum()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Integer roots of a monic integer polynomial, with multiplicity.
pub fn rational_roots(poly: &[BigInt]) -> Result<Vec<(BigInt, u32)>, SequenceError> {
    let mut p: Vec<BigInt> = poly.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.last().map(|c| c.is_one()) != Some(true) {
        return Err(SequenceError::InvalidInput(
            "polynomial must be monic".into(),
        ));
    }
    let mut out = Vec::new();
    let mut zero_mult = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigInt::zero(), zero_mult));
    }
    if p.len() == 1 {
        return Ok(out);
    }
    let fm = factorize(&p[0], &FactorBudget::default())?;
    if !fm.is_complete() {
        return Err(SequenceError::InvalidInput(
            "constant term could not be factored".into(),
        ));
    }
    let mut divisors = vec![BigInt::one()];
    for (q, e) in fm.factors() {
        let q = BigInt::from(q.clone());
        let mut next = Vec::new();
        for d in &divisors {
            let mut pw = d.clone();
            for _ in 0..=*e {
                next.push(pw.clone());
                pw *= &q;
            }
        }
        divisors = next;
    }
    divisors.sort();
    for d in divisors {
        for r in [d.clone(), -d] {
            let mut mult = 0;
            while p.len() > 1 {
                match synthetic_divide(&p, &r) {
                    Some(q) => {
                        p = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// `p / (X − r)` when exact.
fn synthetic_divide(p: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    (&p[0] + carry * r).is_zero().then_some(q)
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeltaOutcome {
    Value(f64),
    Unsupported(String),
}

/// `δ = −Σ_ℓ log max_i |αᵢ|_ℓ / log max_i |αᵢ|` over the distinct roots,
/// computed only when the characteristic polynomial splits over ℚ.
pub fn srl_delta(spec: &RecurrenceSpec, primes: &PrimeSet) -> Result<DeltaOutcome, SequenceError> {
    let roots = match rational_roots(&spec.characteristic_polynomial()) {
        Ok(r) if r.iter().map(|x| x.1 as usize).sum::<usize>() == spec.order() => r,
        _ => {
            return Ok(DeltaOutcome::Unsupported(
                "characteristic polynomial has irrational roots".into(),
            ))
        }
    };
    let top = roots
        .iter()
        .map(|(r, _)| r.magnitude().clone())
        .max()
        .expect("k >= 1");
    if top <= BigUint::one() {
        return Ok(DeltaOutcome::Unsupported("every root has modulus 1".into()));
    }
    let mut num = 0.0;
    for &l in primes.primes() {
        // max |α|_ℓ = ℓ^(−min v_ℓ(α))
        let min_v = roots
            .iter()
            .map(|(r, _)| v_p_int(l, r))
            .collect::<Result<Vec<_>, _>>()?;
        num += *min_v.iter().min().expect("nonempty") as f64 * (l as f64).ln();
    }
    Ok(DeltaOutcome::Value(num / crate::arith::ln_biguint(&top)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Dominant,
    NotDominant,
    /// Root moduli could not be separated within the precision budget.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominantRootReport {
    pub dominance: Dominance,
    /// Interval containing the dominant root and no other root.
    pub root: Option<(BigRational, BigRational)>,
    /// Multiplicity of the dominant root in the characteristic polynomial.
    pub multiplicity: Option<u32>,
    /// Two distinct roots with ratio −1; decided only when every root is
    /// rational.
    pub degenerate: Option<bool>,
    /// Working precision of the decision, 0 when exact.
    pub bits: u64,
}

impl DominantRootReport {
    pub fn simple(&self) -> Option<bool> {
        self.multiplicity.map(|m| m == 1)
    }

    pub fn root_f64(&self) -> Option<f64> {
        self.root.as_ref().map(|(lo, hi)| {
            0.5 * (lo.to_f64().unwrap_or(f64::NAN) + hi.to_f64().unwrap_or(f64::NAN))
        })
    }
}

/// Decide whether one root of the characteristic polynomial strictly
/// exceeds all others in modulus.
///
/// Split polynomials are decided exactly. Otherwise the squarefree part's
/// roots are approximated and enclosed in disks (each disk provably holds one
/// root), refining until the dominant disk separates or a tie is proved.
pub fn dominant_root(spec: &RecurrenceSpec, max_bits: u64) -> DominantRootReport {
    let g_int = spec.characteristic_polynomial();
    let k = spec.order();
    if let Ok(roots) = rational_roots(&g_int) {
        if roots.iter().map(|r| r.1 as usize).sum::<usize>() == k {
            return split_report(&roots);
        }
    }
    let g: Poly = g_int
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let s = poly_div(&g, &poly_gcd(&g, &derivative(&g)));
    let unknown = |bits| DominantRootReport {
        dominance: Dominance::Unknown,
        root: None,
        multiplicity: None,
        degenerate: None,
        bits,
    };
    let mut z: Vec<Cx> = durand_kerner(&s)
        .into_iter()
        .map(|c| Complex::new(dyadic_from_f64(c.re, 64), dyadic_from_f64(c.im, 64)))
        .collect();
    let mut bits = 64;
    loop {
        if let Some(decision) = certify(&s, &z, bits) {
            return match decision {
                Decision::NotDominant => DominantRootReport {
                    dominance: Dominance::NotDominant,
                    root: None,
                    multiplicity: None,
                    degenerate: None,
                    bits,
                },
                Decision::Dominant(lo, hi) => {
                    let multiplicity = multiplicity_in(&g, &s, &lo, &hi);
                    DominantRootReport {
                        dominance: Dominance::Dominant,
                        root: Some((lo, hi)),
                        multiplicity: Some(multiplicity),
                        degenerate: None,
                        bits,
                    }
                }
            };
        }
        if bits >= max_bits {
            return unknown(bits);
        }
        bits = (2 * bits).min(max_bits);
        match refine(&s, &z, bits) {
            Some(next) => z = next,
            None => return unknown(bits),
        }
    }
}

fn split_report(roots: &[(BigInt, u32)]) -> DominantRootReport {
    let top = roots.iter().map(|(r, _)| r.abs()).max().expect("nonempty");
    let at_top: Vec<&(BigInt, u32)> = roots.iter().filter(|(r, _)| r.abs() == top).collect();
    let degenerate = roots
        .iter()
        .any(|(r, _)| !r.is_zero() && roots.iter().any(|(s, _)| s == &-r));
    let (dominance, root, multiplicity) = if at_top.len() == 1 {
        let r = BigRational::from_integer(at_top[0].0.clone());
        (Dominance::Dominant, Some((r.clone(), r)), Some(at_top[0].1))
    } else {
        (Dominance::NotDominant, None, None)
    };
    DominantRootReport {
        dominance,
        root,
        multiplicity,
        degenerate: Some(degenerate),
        bits: 0,
    }
}

type Poly = Vec<BigRational>;
type Cx = Complex<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect(),
    )
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

/// `(quotient, remainder)`.
fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = b.len() - 1;
    let mut r = trim(a.clone());
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for dr in (db..r.len()).rev() {
        let c = &r[dr] / &b[db];
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[dr - db + i] -= &c * bc;
            }
        }
        q[dr - db] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn poly_div(a: &Poly, b: &Poly) -> Poly {
    poly_divmod(a, b).0
}

fn make_monic(p: Poly) -> Poly {
    let lead = p.last().expect("nonempty").clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !is_zero_poly(&b) {
        let r = poly_divmod(&a, &b).1;
        a = b;
        b = r;
    }
    make_monic(a)
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn eval_c(p: &Poly, z: &Cx) -> Cx {
    p.iter().rev().fold(
        Complex::new(BigRational::zero(), BigRational::zero()),
        |acc, c| acc * z + Complex::new(c.clone(), BigRational::zero()),
    )
}

fn reflect(p: &Poly) -> Poly {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn dyadic_round(r: &BigRational, bits: u64) -> BigRational {
    let s = BigRational::from_integer(pow2(bits));
    BigRational::new((r * &s).round().to_integer(), pow2(bits))
}

fn dyadic_from_f64(x: f64, bits: u64) -> BigRational {
    BigRational::from_float(x).map_or_else(BigRational::zero, |r| dyadic_round(&r, bits))
}

fn sqrt_lower(r: &BigRational, bits: u64) -> BigRational {
    let scaled = (r * BigRational::from_integer(pow2(2 * bits)))
        .floor()
        .to_integer();
    BigRational::new(BigInt::from(scaled.magnitude().sqrt()), pow2(bits))
}

fn sqrt_upper(r: &BigRational, bits: u64) -> BigRational {
    let scaled = (r * BigRational::from_integer(pow2(2 * bits)))
        .ceil()
        .to_integer();
    BigRational::new(BigInt::from(scaled.magnitude().sqrt()) + 1, pow2(bits))
}

fn norm2(z: &Cx) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

/// Floating Durand–Kerner seeds for a monic polynomial.
fn durand_kerner(p: &Poly) -> Vec<Complex<f64>> {
    let n = p.len() - 1;
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|i| {
            Complex::from_polar(
                radius,
                2.0 * std::f64::consts::PI * i as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let eval = |x: Complex<f64>| {
        c.iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &a| acc * x + a)
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let den = (0..n)
                .filter(|&j| j != i)
                .fold(Complex::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-16 {
            break;
        }
    }
    z
}

/// Weierstrass corrections `S(zᵢ) / ∏_{j≠i}(zᵢ − zⱼ)`; `None` if two
/// approximations coincide.
fn corrections(p: &Poly, z: &[Cx]) -> Option<Vec<Cx>> {
    (0..z.len())
        .map(|i| {
            let den = (0..z.len()).filter(|&j| j != i).fold(
                Complex::new(BigRational::one(), BigRational::zero()),
                |acc, j| acc * (&z[i] - &z[j]),
            );
            if den.re.is_zero() && den.im.is_zero() {
                return None;
            }
            Some(eval_c(p, &z[i]) / den)
        })
        .collect()
}

/// Exact Durand–Kerner steps, rounding to `bits` after each.
fn refine(p: &Poly, z: &[Cx], bits: u64) -> Option<Vec<Cx>> {
    let mut z = z.to_vec();
    for _ in 0..3 {
        let w = corrections(p, &z)?;
        z = z
            .iter()
            .zip(&w)
            .map(|(zi, wi)| {
                let v = zi - wi;
                Complex::new(dyadic_round(&v.re, bits), dyadic_round(&v.im, bits))
            })
            .collect();
    }
    Some(z)
}

enum Decision {
    Dominant(BigRational, BigRational),
    NotDominant,
}

struct Disk {
    c: Cx,
    rho: BigRational,
    mod_lo: BigRational,
    mod_hi: BigRational,
}

fn disks_meet(a: &Cx, ra: &BigRational, b: &Cx, rb: &BigRational) -> bool {
    let sum = ra + rb;
    norm2(&(a - b)) <= &sum * &sum
}

/// With `n` = degree, every disk `|z − zᵢ| ≤ n|wᵢ|` holds a root, and
/// pairwise disjoint disks hold exactly one each.
fn certify(p: &Poly, z: &[Cx], bits: u64) -> Option<Decision> {
    let n = z.len();
    let nn = BigRational::from_integer(BigInt::from(n * n));
    let prec = bits + 8;
    let w = corrections(p, z)?;
    let disks: Vec<Disk> = z
        .iter()
        .zip(&w)
        .map(|(c, wi)| {
            let rho = sqrt_upper(&(&nn * norm2(wi)), prec);
            let m2 = norm2(c);
            let lo = sqrt_lower(&m2, prec) - &rho;
            Disk {
                c: c.clone(),
                mod_lo: if lo.is_negative() {
                    BigRational::zero()
                } else {
                    lo
                },
                mod_hi: sqrt_upper(&m2, prec) + &rho,
                rho,
            }
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if disks_meet(&disks[i].c, &disks[i].rho, &disks[j].c, &disks[j].rho) {
                return None;
            }
        }
    }
    let top = (0..n).max_by(|&a, &b| disks[a].mod_lo.cmp(&disks[b].mod_lo).then(b.cmp(&a)))?;
    let d = &disks[top];
    let conj = d.c.conj();
    let others = || (0..n).filter(move |&j| j != top);
    // conj(root) is a root; if conj(D) meets no other disk the root is real.
    let partners: Vec<usize> = others()
        .filter(|&j| disks_meet(&conj, &d.rho, &disks[j].c, &disks[j].rho))
        .collect();
    let off_axis = |k: usize| disks[k].c.im.abs() > disks[k].rho;
    if off_axis(top) {
        // Non-real top root: its conjugate ties it unless something is larger.
        if let [partner] = partners[..] {
            if others()
                .filter(|&j| j != partner)
                .all(|j| disks[j].mod_hi <= d.mod_lo)
            {
                return Some(Decision::NotDominant);
            }
        }
        return None;
    }
    if !partners.is_empty() || d.c.re.abs() <= d.rho {
        return None;
    }
    // Real root α with |α| ∈ [mod_lo, mod_hi] and sign of re(c).
    let (lo, hi) = if d.c.re.is_positive() {
        (d.mod_lo.clone(), d.mod_hi.clone())
    } else {
        (-d.mod_hi.clone(), -d.mod_lo.clone())
    };
    if others().all(|j| disks[j].mod_hi < d.mod_lo) {
        return Some(Decision::Dominant(lo, hi));
    }
    // A tie with −α is exact: α is then a root of gcd(S(X), S(−X)).
    let isolated = others().all(|j| {
        let dj = &disks[j];
        dj.mod_hi < d.mod_lo
            || off_axis(j)
            || (dj.c.re.is_positive() != d.c.re.is_positive() && dj.c.re.abs() > dj.rho)
    });
    if isolated && has_root_in(&poly_gcd(p, &reflect(p)), &lo, &hi) {
        return Some(Decision::NotDominant);
    }
    None
}

/// For `h` with simple roots and at most one root of `h` in `[lo, hi]`.
fn has_root_in(h: &Poly, lo: &BigRational, hi: &BigRational) -> bool {
    if h.len() <= 1 {
        return false;
    }
    let (a, b) = (eval(h, lo), eval(h, hi));
    a.is_zero() || b.is_zero() || a.is_positive() != b.is_positive()
}

/// Multiplicity of the root of `s` isolated in `[lo, hi]` as a root of `g`.
fn multiplicity_in(g: &Poly, s: &Poly, lo: &BigRational, hi: &BigRational) -> u32 {
    let mut m = 1;
    let mut d = derivative(g);
    while !is_zero_poly(&d) && has_root_in(&poly_gcd(s, &d), lo, hi) {
        m += 1;
        d = derivative(&d);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(a: &[i64], u: &[i64]) -> RecurrenceSpec {
        RecurrenceSpec::from_i64(a, u).unwrap()
    }

    #[test]
    fn fibonacci() {
        let f = spec(&[1, 1], &[0, 1]);
        assert_eq!(recurrence_values(&f, 10)[10], BigInt::from(55));
        assert_eq!(companion_value(&f, 90), recurrence_values(&f, 90)[90]);
        let r = dominant_root(&f, 1024);
        assert_eq!(r.dominance, Dominance::Dominant);
        assert_eq!(r.simple(), Some(true));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let (lo, hi) = r.root.unwrap();
        assert!(lo.to_f64().unwrap() <= phi && phi <= hi.to_f64().unwrap());
        assert_eq!(r.degenerate, None);
    }

    #[test]
    fn split_cases() {
        let r = dominant_root(&spec(&[2, -1], &[0, 1]), 1024);
        assert_eq!(
            (r.dominance, r.multiplicity, r.simple()),
            (Dominance::Dominant, Some(2), Some(false))
        );
        // roots 2 and −2
        let r = dominant_root(&spec(&[0, 4], &[1, 1]), 1024);
        assert_eq!(
            (r.dominance, r.degenerate),
            (Dominance::NotDominant, Some(true))
        );
        // roots 2, 3
        let r = dominant_root(&spec(&[5, -6], &[1, 1]), 1024);
        assert_eq!(
            r.root,
            Some((
                BigRational::from_integer(3.into()),
                BigRational::from_integer(3.into())
            ))
        );
        assert_eq!(r.degenerate, Some(false));
    }

    #[test]
    fn irrational_cases() {
        // X² − 2: ±√2 tie
        assert_eq!(
            dominant_root(&spec(&[0, 2], &[1, 1]), 1024).dominance,
            Dominance::NotDominant
        );
        // X² − 2X + 5: roots 1 ± 2i
        assert_eq!(
            dominant_root(&spec(&[2, -5], &[1, 1]), 1024).dominance,
            Dominance::NotDominant
        );
        // X³ − X − 1: plastic number dominates its complex pair
        let r = dominant_root(&spec(&[0, 1, 1], &[1, 1, 1]), 1024);
        assert_eq!(r.dominance, Dominance::Dominant);
        assert!((r.root_f64().unwrap() - 1.324717957244746).abs() < 1e-12);
        // (X² − 2)²
        assert_eq!(
            dominant_root(&spec(&[0, 4, 0, -4], &[1, 0, 0, 0]), 1024).dominance,
            Dominance::NotDominant
        );
        // (X² − 2X − 1)²: 1 + √2 dominates, with multiplicity 2
        let r = dominant_root(&spec(&[4, -2, -4, -1], &[1, 0, 0, 0]), 1024);
        assert_eq!(
            (r.dominance, r.multiplicity),
            (Dominance::Dominant, Some(2))
        );
    }

    #[test]
    fn delta_examples() {
        let two_three = PrimeSet::new([2, 3]).unwrap();
        assert_eq!(
            srl_delta(&spec(&[6], &[1]), &two_three).unwrap(),
            DeltaOutcome::Value(1.0)
        );
        assert_eq!(
            srl_delta(&spec(&[6], &[1]), &PrimeSet::new([5]).unwrap()).unwrap(),
            DeltaOutcome::Value(0.0)
        );
        assert_eq!(
            srl_delta(&spec(&[5, -6], &[1, 1]), &PrimeSet::new([2]).unwrap()).unwrap(),
            DeltaOutcome::Value(0.0)
        );
        assert!(matches!(
            srl_delta(&spec(&[1, 1], &[0, 1]), &two_three).unwrap(),
            DeltaOutcome::Unsupported(_)
        ));
        assert!(RecurrenceSpec::from_i64(&[1, 0], &[0, 1]).is_err());
        assert!(RecurrenceSpec::from_i64(&[1, 1], &[0, 0]).is_err());
    }

    proptest! {
        #[test]
        fn recurrence_and_companion_agree(a in prop::collection::vec(-5i64..6, 1..5), seed in prop::collection::vec(-9i64..10, 5), n in 0u64..60) {
            let k = a.len();
            let mut a = a;
            if a[k - 1] == 0 { a[k - 1] = 1; }
            let mut u: Vec<i64> = seed[..k].to_vec();
            if u.iter().all(|&x| x == 0) { u[0] = 1; }
            let s = spec(&a, &u);
            let vals = recurrence_values(&s, n as usize + k);
            for i in k..vals.len() {
                let want: BigInt = (0..k).map(|j| BigInt::from(a[j]) * &vals[i - 1 - j]).sum();
                prop_assert_eq!(&vals[i], &want);
            }
            prop_assert_eq!(companion_value(&s, n), vals[n as usize].clone());
        }

        #[test]
        fn delta_in_unit_interval(r1 in -30i64..30, r2 in -30i64..30, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            prop_assume!(r1 != 0 && r2 != 0);
            // (X − r1)(X − r2) = X² − (r1 + r2)X + r1r2
            let s = spec(&[r1 + r2, -(r1 * r2)], &[0, 1]);
            if let DeltaOutcome::Value(d) = srl_delta(&s, &PrimeSet::new([p]).unwrap()).unwrap() {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
            }
        }
    }
}
