use num_bigint::BigUint;
use num_traits::One;

use super::SequenceError;

/// Positive integers not divisible by `base` with at most `max_digits`
/// nonzero base-`base` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparseDigitSpec {
    base: u64,
    max_digits: u32,
}

impl SparseDigitSpec {
    pub fn new(base: u64, max_digits: u32) -> Result<Self, SequenceError> {
        if base < 2 || max_digits < 2 {
            return Err(SequenceError::InvalidInput(format!(
                "need base >= 2 and at most k >= 2 digits, got b = {base}, k = {max_digits}"
            )));
        }
        Ok(SparseDigitSpec { base, max_digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn max_digits(&self) -> u32 {
        self.max_digits
    }

    /// Members with leading position `top`, i.e. in `[b^top, b^(top+1))`,
    /// sorted.
    fn stratum(&self, top: u32) -> Vec<BigUint> {
        let b = BigUint::from(self.base);
        if top == 0 {
            return (1..self.base).map(BigUint::from).collect();
        }
        let powers: Vec<BigUint> = (0..=top).map(|i| b.pow(i)).collect();
        // Fixed ends d_top·b^top + d₀, then up to k − 2 digits strictly between.
        let mut out = Vec::new();
        let mut middles = vec![BigUint::ZERO];
        self.middles(
            1,
            top,
            self.max_digits - 2,
            &powers,
            &BigUint::ZERO,
            &mut middles,
        );
        for hi in 1..self.base {
            let head = &powers[top as usize] * hi;
            for lo in 1..self.base {
                for mid in &middles {
                    out.push(&head + mid + lo);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn middles(
        &self,
        from: u32,
        top: u32,
        left: u32,
        powers: &[BigUint],
        acc: &BigUint,
        out: &mut Vec<BigUint>,
    ) {
        if left == 0 {
            return;
        }
        for pos in from..top {
            for d in 1..self.base {
                let v = acc + &powers[pos as usize] * d;
                out.push(v.clone());
                self.middles(pos + 1, top, left - 1, powers, &v, out);
            }
        }
    }
}

/// The first `count` members in increasing order. Strata by leading
/// position are disjoint and increasing, so concatenating sorted strata
/// merges them.
pub fn sparse_digit_sequence(spec: &SparseDigitSpec, count: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(count);
    let mut top = 0;
    while out.len() < count {
        let s = spec.stratum(top);
        out.extend(s.into_iter().take(count - out.len()));
        top += 1;
    }
    out
}

/// Every member below `bound`.
pub fn sparse_digits_below(spec: &SparseDigitSpec, bound: &BigUint) -> Vec<BigUint> {
    let b = BigUint::from(spec.base);
    let mut out = Vec::new();
    let mut top = 0;
    let mut start = BigUint::one();
    while &start < bound {
        out.extend(spec.stratum(top).into_iter().filter(|x| x < bound));
        top += 1;
        start *= &b;
    }
    out
}
