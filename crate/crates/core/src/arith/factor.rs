use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::prime::{is_prime, is_prime_u64, mul_mod, small_primes, TRIAL_BOUND};
use super::{perfect_power_split, ArithError};

/// Effort limit for the rho stage, counted in polynomial steps across the
/// whole factorization of one input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 2_000_000,
        }
    }
}

/// Prime factorization of `|n|`, possibly partial.
///
/// `unfactored` is 1 when the factorization is complete. Otherwise it is the
/// product of the pieces the budget could not split or certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    factors: Vec<(BigUint, u32)>,
    unfactored: BigUint,
}

impl FactorMap {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn unfactored(&self) -> &BigUint {
        &self.unfactored
    }

    pub fn is_complete(&self) -> bool {
        self.unfactored.is_one()
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Product of all prime powers times the unfactored part.
    pub fn recombine(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.unfactored.clone(), |acc, (p, e)| acc * p.pow(*e))
    }

    fn from_parts(mut primes: Vec<BigUint>, unfactored: BigUint) -> Self {
        primes.sort();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        FactorMap {
            factors,
            unfactored,
        }
    }
}

/// Factor `n` by trial division up to 10⁵, then Brent's rho with a fixed
/// sequence of polynomial constants.
///
/// Pieces that cannot be split within `budget`, or whose primality cannot be
/// certified, end up in [`FactorMap::unfactored`].
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Result<FactorMap, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut m = n.magnitude().clone();
    let mut primes = Vec::new();
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > m {
            break;
        }
        while (&m % p).is_zero() {
            m /= p;
            primes.push(p_big.clone());
        }
    }
    if m.is_one() {
        return Ok(FactorMap::from_parts(primes, m));
    }
    let trial_sq = BigUint::from(TRIAL_BOUND as u64 * TRIAL_BOUND as u64);
    let mut remaining = budget.rho_iterations;
    let mut unfactored = BigUint::one();
    let mut pending = vec![m];
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        // Every piece here is free of primes up to the trial bound.
        if c < trial_sq {
            primes.push(c);
            continue;
        }
        match is_prime(&c) {
            Ok(true) => {
                primes.push(c);
                continue;
            }
            Ok(false) | Err(ArithError::PrimalityRange(_)) => {}
            Err(e) => return Err(e),
        }
        let (root, k) = perfect_power_split(&c)?;
        if k > 1 {
            pending.extend(std::iter::repeat(root).take(k as usize));
            continue;
        }
        match rho_split(&c, &mut remaining) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => unfactored *= c,
        }
    }
    Ok(FactorMap::from_parts(primes, unfactored))
}

/// Find a nontrivial divisor of composite-or-unknown `n`, spending at most
/// `remaining` steps.
fn rho_split(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(small) = n.to_u64() {
        if is_prime_u64(small) {
            return None;
        }
        return rho_u64(small, remaining).map(BigUint::from);
    }
    rho_big(n, remaining)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rho_u64(n: u64, remaining: &mut u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let mut c = 1u64;
    while *remaining > 0 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        'outer: while g == 1 {
            x = y;
            if *remaining < r {
                *remaining = 0;
                break;
            }
            *remaining -= r;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                if *remaining < steps {
                    *remaining = 0;
                    break 'outer;
                }
                *remaining -= steps;
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // Batched product overshot; walk back one step at a time.
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
        c += 1;
    }
    None
}

fn rho_big(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let mut c = BigUint::one();
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while *remaining > 0 {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        'outer: while g == one {
            x = y.clone();
            if *remaining < r {
                *remaining = 0;
                break;
            }
            *remaining -= r;
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *remaining < steps {
                    *remaining = 0;
                    break 'outer;
                }
                *remaining -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && &g < n {
            return Some(g);
        }
        c += 1u32;
    }
    None
}

/// Integer k-th root helper kept next to the factorizer for its perfect-power
/// shortcut.
pub(crate) fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}
