//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line with its runtime against the budget.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use dioph_core::algebraic::{
    check_power_gap, fracpart_power_rational, Algebraic, GapOutcome, PrecisionPolicy,
};
use dioph_core::arith::{s_part, FactorBudget, PrimeSet};
use dioph_core::bounds::{
    coefficient_bound, invert_linear_log, lower_bound, padic_log_form_bound, two_log_padic_bound,
    BoundConstants, LogFormInput, LowerBoundVariant, PadicBranch,
};
use dioph_core::cfrac::{cf_expand, convergents, legendre_filter, simultaneous_scan, vb_series};
use dioph_core::convergent_spart::{
    convergent_spart_scan, lambda_q_decompose, triple_decompose_scan,
};
use dioph_core::sequences::{
    poly_value_scan, power_sum_grid, sparse_digits_below, spart_series, sunit_solve,
    SparseDigitSpec,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn verdict(id: u32, name: &str, budget_secs: u64, start: Instant, outcome: Result<String, String>) {
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let (ok, detail) = match outcome {
        Ok(d) if elapsed < budget => (true, d),
        Ok(d) => (false, format!("{d}; over time budget")),
        Err(d) => (false, d),
    };
    let tag = if ok { "PASS" } else { "FAIL" };
    // Straight to the handle so the line shows without --nocapture.
    let line = format!(
        "{tag} [{id:2}] {name}: {detail} ({:.2}s / {budget_secs}s)\n",
        elapsed.as_secs_f64()
    );
    std::io::stdout()
        .lock()
        .write_all(line.as_bytes())
        .expect("stdout");
    assert!(ok, "criterion {id} failed");
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(p: &[u64]) -> PrimeSet {
    PrimeSet::new(p.iter().copied()).unwrap()
}

fn num(s: &str) -> Algebraic {
    s.parse().unwrap()
}

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn criterion_01_s_part_matches_trial_division() {
    let start = Instant::now();
    let outcome = (|| {
        for primes in [vec![2u64], vec![2, 3], vec![2, 3, 7]] {
            let s = set(&primes);
            for n in 1..=100_000u64 {
                let mut part = 1u64;
                let mut m = n;
                for &p in &primes {
                    while m % p == 0 {
                        m /= p;
                        part *= p;
                    }
                }
                let d = s_part(&BigInt::from(n), &s);
                check(d.s_part == BigUint::from(part), || {
                    format!("n = {n}, S = {primes:?}")
                })?;
            }
        }
        Ok("3 × 10⁵ decompositions agree".to_string())
    })();
    verdict(1, "S-part oracle equivalence", 10, start, outcome);
}

#[test]
fn criterion_02_convergents() {
    let start = Instant::now();
    let outcome = (|| {
        let records = cf_expand(&num("sqrt(2)"), 5, &policy()).map_err(|e| e.to_string())?;
        let got: Vec<(i64, i64)> = records
            .iter()
            .map(|r| (r.p.to_i64().unwrap(), r.q.to_i64().unwrap()))
            .collect();
        check(got == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)], || {
            format!("sqrt(2) convergents {got:?}")
        })?;
        let mut checked = 0;
        for x in ["sqrt(2)", "sqrt(3)", "phi", "root(2,3)"] {
            let theta = num(x);
            let mut count = 8;
            let cs = loop {
                let cs = convergents(&theta, count, &policy()).map_err(|e| e.to_string())?;
                if cs.last().unwrap().q > BigInt::from(10_000) {
                    break cs;
                }
                count *= 2;
            };
            for w in cs.windows(2) {
                let det = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
                check(det.abs().is_one(), || {
                    format!("{x}: determinant {det} at n = {}", w[1].index)
                })?;
            }
            let known: HashSet<(BigInt, BigInt)> =
                cs.iter().map(|c| (c.p.clone(), c.q.clone())).collect();
            for (p, qq) in legendre_filter(&theta, 10_000, &policy()).map_err(|e| e.to_string())? {
                check(known.contains(&(p.clone(), BigInt::from(qq))), || {
                    format!("{x}: {p}/{qq} is not a convergent")
                })?;
                checked += 1;
            }
        }
        Ok(format!("{checked} Legendre fractions are all convergents"))
    })();
    verdict(2, "convergents and Legendre filter", 30, start, outcome);
}

#[test]
fn criterion_03_fractional_parts_of_three_halves() {
    let start = Instant::now();
    let outcome = (|| {
        let scale = BigInt::from(10u32).pow(200);
        for n in 1..=300u32 {
            let f = fracpart_power_rational(&q(3, 2), n).map_err(|e| e.to_string())?;
            let two_n = BigInt::one() << n;
            let three_n = BigInt::from(3).pow(n);
            check(f.m_n.abs() * 2 <= two_n, || {
                format!("|m_n| > 2^n/2 at n = {n}")
            })?;
            check((&three_n - &f.m_n).mod_floor(&two_n).is_zero(), || {
                format!("m_n ≢ 3^n at n = {n}")
            })?;
            // 200-digit fixed point: ⌊10²⁰⁰ (3/2)ⁿ⌋ is off by less than one unit.
            let r = (&three_n * &scale / &two_n).mod_floor(&scale);
            let d = r.clone().min(&scale - &r);
            let exact = &f.distance * BigRational::from_integer(scale.clone());
            let gap = (exact - BigRational::from_integer(d)).abs();
            check(gap <= BigRational::one(), || {
                format!("distance disagrees with decimal oracle at n = {n}")
            })?;
        }
        Ok("300 powers exact; decimal oracle agrees to 1e-200".to_string())
    })();
    verdict(3, "fractional parts of (3/2)^n", 5, start, outcome);
}

#[test]
fn criterion_04_power_gap_inequality() {
    let start = Instant::now();
    let outcome = (|| {
        let mut decided = 0;
        for x in ["sqrt(2)", "sqrt(3)", "phi", "root(2,3)", "3/2"] {
            let xi = num(x);
            for n in 1..=300 {
                let c =
                    check_power_gap(&xi, n, &policy()).map_err(|e| format!("{x}, n = {n}: {e}"))?;
                match c.outcome {
                    GapOutcome::Holds => decided += 1,
                    GapOutcome::IntegerPower => {}
                    GapOutcome::Violated => return Err(format!("violated for {x} at n = {n}")),
                }
            }
        }
        Ok(format!("{decided} certified, zero violations"))
    })();
    verdict(4, "power gap lower bound", 60, start, outcome);
}

#[test]
fn criterion_05_base_two_expansion_tail() {
    let start = Instant::now();
    let outcome = (|| {
        let series =
            vb_series(&num("sqrt(1048577)"), 2, 200, &policy()).map_err(|e| e.to_string())?;
        let top = series.max_over(100, 200).ok_or("empty window")?;
        let ceiling = 48f64.ln() / (10.0 * 2f64.ln()) + 0.1;
        let baseline = 0.15607683658254612;
        check(top.value <= ceiling, || {
            format!("tail max {} above {ceiling}", top.value)
        })?;
        check((top.value - baseline).abs() < 1e-9, || {
            format!("tail max {} vs oracle {baseline}", top.value)
        })?;
        Ok(format!(
            "tail max {:.6} at n = {} (ceiling {ceiling:.4})",
            top.value, top.index
        ))
    })();
    verdict(5, "v_n tail for sqrt(2^20 + 1), b = 2", 60, start, outcome);
}

#[test]
fn criterion_06_simultaneous_approximation() {
    let start = Instant::now();
    let outcome = (|| {
        let scan = simultaneous_scan(&num("sqrt(2)"), &num("sqrt(3)"), 100_000, &policy())
            .map_err(|e| e.to_string())?;
        let witness = scan
            .rows
            .iter()
            .find(|r| r.q == 57_649)
            .ok_or("no row for q = 57649")?;
        check(witness.exponent > 1.4, || {
            format!("witness exponent {}", witness.exponent)
        })?;
        check((witness.exponent - 1.530097).abs() < 1e-6, || {
            format!("witness exponent {}", witness.exponent)
        })?;
        let top = scan.series.tail_max().ok_or("empty tail")?;
        check(top.index == 57_649, || {
            format!("tail argmax at q = {}", top.index)
        })?;
        check(top.value <= 1.913 + 0.05, || {
            format!("tail max {} above 1.963", top.value)
        })?;
        Ok(format!(
            "witness q = 57649 with exponent {:.6}; tail max {:.4} ≤ 1.963",
            witness.exponent, top.value
        ))
    })();
    verdict(
        6,
        "simultaneous approximation of (sqrt 2, sqrt 3)",
        120,
        start,
        outcome,
    );
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn criterion_07_bound_evaluators_double_entry() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    let outcome = (|| {
        let l3 = |x: f64| x.max(3.0).ln();
        let mut worst = 0f64;
        let mut close = |name: &str, a: f64, b: f64| {
            let r = rel(a, b);
            worst = worst.max(r);
            check(r <= 1e-12, || format!("{name}: {a} vs {b}"))
        };
        for case in 0..20 {
            let n = rng.gen_range(1..=4usize);
            let mut b: Vec<i64> = (0..n).map(|_| rng.gen_range(-10_000i64..=10_000)).collect();
            if case % 2 == 0 || b[n - 1] == 0 {
                b[n - 1] = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
            let h: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..50.0)).collect();
            let degree = rng.gen_range(1..=4u32);
            let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
            let delta = rng.gen_range(0.01..0.5);
            let c = BoundConstants {
                c1: rng.gen_range(0.5..3.0),
                c2: rng.gen_range(0.5..3.0),
                c3: rng.gen_range(0.5..3.0),
                c4: rng.gen_range(0.5..3.0),
                c5: rng.gen_range(0.5..3.0),
                c6: rng.gen_range(0.5..3.0),
                c7: rng.gen_range(0.5..3.0),
                source: "random".into(),
            };
            let input = LogFormInput::new(b.clone(), h.clone(), degree)
                .and_then(|x| {
                    if n >= 2 {
                        x.with_padic(p, delta, None)
                    } else {
                        Ok(x)
                    }
                })
                .map_err(|e| e.to_string())?;

            let nf = n as i32;
            let prod: f64 = h.iter().product();
            let hn = h[n - 1];
            let bn = b[n - 1].unsigned_abs() as f64;
            let big_b = b
                .iter()
                .map(|x| x.unsigned_abs() as f64)
                .fold(3.0, f64::max);
            let n3n = (n as f64).powi(3 * nf);
            let hmax = h[..n - 1].iter().copied().fold(1.0, f64::max);
            let mut bp = 3f64;
            for j in 0..n - 1 {
                bp = bp.max(bn / h[j] + b[j].unsigned_abs() as f64 / hn);
            }
            let mut bpp = 3f64;
            for j in 0..n {
                bpp = bpp.max(b[j].unsigned_abs() as f64 * h[j] / hn);
            }
            let expect = [
                (
                    LowerBoundVariant::LogB,
                    Some(-c.c1.powi(nf) * prod * l3(big_b)),
                ),
                (
                    LowerBoundVariant::LogBPrime,
                    (n >= 2).then(|| -c.c2.powi(nf) * n3n * prod * l3(bp)),
                ),
                (
                    LowerBoundVariant::LogBDoublePrime,
                    Some(-c.c3.powi(nf) * prod * l3(bpp)),
                ),
                (
                    LowerBoundVariant::LogBOverHn,
                    (bn == 1.0).then(|| -c.c4.powi(nf) * n3n * prod * l3(big_b / hn)),
                ),
                (
                    LowerBoundVariant::LogBHmaxOverHn,
                    (bn == 1.0).then(|| -c.c5.powi(nf) * prod * l3(big_b * hmax / hn)),
                ),
            ];
            for (variant, want) in expect {
                match (lower_bound(&input, &c, variant), want) {
                    (Ok(r), Some(w)) => close(variant.name(), r.value, w)?,
                    (Err(_), None) => {}
                    (got, want) => return Err(format!("{}: {got:?} vs {want:?}", variant.name())),
                }
            }
            if n >= 2 {
                let r = padic_log_form_bound(&input, &c).map_err(|e| e.to_string())?;
                let pf = p as f64;
                let pd = pf.powi(degree as i32);
                let head: f64 = h[..n - 1].iter().product();
                let t = bn / delta * c.c4.powi(nf * nf) * pf.powi((nf + 1) * degree as i32) * head;
                close("T", r.t, t)?;
                close("height term", r.height_term, prod * l3(t))?;
                let lin = delta * big_b / (bn * c.c3.powi(nf));
                close(
                    "combined",
                    r.combined,
                    c.c2.powi(nf) * pd / pf.ln().powi(2) * (prod * l3(t)).max(lin),
                )?;
                close(
                    "valuation bound",
                    r.valuation_bound,
                    c.c6.powi(nf) * pd * prod * l3(big_b / hn),
                )?;
                close(
                    "valuation bound, hmax",
                    r.valuation_bound_hmax,
                    c.c7.powi(nf) * pd * prod * l3(big_b * hmax / hn),
                )?;
                let small = big_b <= c.c5.powi(nf) * prod * bn;
                check(small == (r.branch == PadicBranch::SmallB), || {
                    format!("branch {:?} in case {case}", r.branch)
                })?;
                let two = two_log_padic_bound(
                    b[0].unsigned_abs().max(1),
                    b[1].unsigned_abs().max(1),
                    h[0],
                    h[1],
                    p,
                    degree,
                    c.c1,
                )
                .map_err(|e| e.to_string())?;
                let bp2 = b[0].unsigned_abs().max(1) as f64 / h[1]
                    + b[1].unsigned_abs().max(1) as f64 / h[0];
                close(
                    "two-log bound",
                    two,
                    c.c1 * pd * h[0] * h[1] * l3(bp2).powi(2),
                )?;
            }
            if bn == 1.0 {
                let r = coefficient_bound(&input, &c, delta).map_err(|e| e.to_string())?;
                let k = c.c4.powi(nf) * n3n * prod / delta;
                close("K", r.k, k)?;
                if r.crossing {
                    let gap = k * (r.bound / hn).ln() - r.bound;
                    check(gap.abs() <= 1e-9 * r.bound, || {
                        format!("coefficient bound off the crossing by {gap}")
                    })?;
                } else {
                    check(r.bound == 3.0 * hn, || {
                        "no crossing but bound is not 3h*_n".into()
                    })?;
                }
            }
        }
        Ok(format!(
            "20 cases, worst relative gap {worst:.1e}, branches exclusive"
        ))
    })();
    verdict(7, "bound evaluators, double entry", 1, start, outcome);
}

#[test]
fn criterion_08_linear_log_inversion() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let outcome = (|| {
        let x = invert_linear_log(10.0, 1.0, 1)
            .map_err(|e| e.to_string())?
            .ok_or("no solution")?;
        check((35.7715..=35.7716).contains(&x), || format!("x* = {x}"))?;
        let mut none = 0;
        for _ in 0..100 {
            let k = 10f64.powf(rng.gen_range(-0.5..6.0));
            let h = 10f64.powf(rng.gen_range(0.0..3.0));
            let e = rng.gen_range(1..=2u32);
            let gap = |x: f64| k * (x / h).ln().powi(e as i32) - x;
            match invert_linear_log(k, h, e).map_err(|e| e.to_string())? {
                Some(x) => {
                    check(x >= 3.0 * h, || {
                        format!("x* = {x} below 3H for K={k}, H={h}")
                    })?;
                    check(gap(x) >= -1e-9 * x, || {
                        format!("x* = {x} not admissible for K={k}, H={h}, e={e}")
                    })?;
                    check(gap(x * (1.0 + 1e-9)) < 0.0, || {
                        format!("x* = {x} not maximal for K={k}, H={h}, e={e}")
                    })?;
                    for t in [1.5, 2.0, 10.0, 1e3] {
                        check(gap(x * t) < 0.0, || {
                            format!("admissible point beyond x* for K={k}, H={h}")
                        })?;
                    }
                }
                None => {
                    none += 1;
                    let mut y = 3.0 * h;
                    while y < 1e12 * h {
                        check(gap(y) < 0.0, || {
                            format!("missed solution {y} for K={k}, H={h}, e={e}")
                        })?;
                        y *= 1.01;
                    }
                }
            }
        }
        Ok(format!(
            "x*(10, 1, 1) = {x:.6}; 100 random cases ({none} without solution)"
        ))
    })();
    verdict(8, "inversion of x ≤ K log(x/H)^e", 1, start, outcome);
}

#[test]
fn criterion_09_sparse_digits() {
    let start = Instant::now();
    let outcome = (|| {
        let limit = 1_000_000u64;
        let mut sizes = Vec::new();
        for (b, k) in [(2u64, 2u32), (2, 3), (10, 2), (10, 3)] {
            let brute: Vec<u64> = (1..limit)
                .filter(|&n| {
                    if n % b == 0 {
                        return false;
                    }
                    let (mut m, mut nonzero) = (n, 0);
                    while m > 0 {
                        nonzero += (m % b != 0) as u32;
                        m /= b;
                    }
                    nonzero <= k
                })
                .collect();
            let spec = SparseDigitSpec::new(b, k).map_err(|e| e.to_string())?;
            let got: Vec<u64> = sparse_digits_below(&spec, &BigUint::from(limit))
                .iter()
                .map(|u| u.to_u64().unwrap())
                .collect();
            check(got == brute, || {
                format!(
                    "b = {b}, k = {k}: {} vs {} elements",
                    got.len(),
                    brute.len()
                )
            })?;
            sizes.push(got.len());
        }
        Ok(format!("set sizes {sizes:?} match"))
    })();
    verdict(9, "sparse digit sequences below 10^6", 30, start, outcome);
}

/// Pairs `a + b = c` of coprime {2,3}-integers, giving `x₁ = a/c`, `x₂ = b/c`.
fn sunit_oracle(e: u32) -> HashSet<(BigRational, BigRational)> {
    let mut units = Vec::new();
    for i in 0..=e {
        for j in 0..=e {
            let u = BigInt::from(2).pow(i) * BigInt::from(3).pow(j);
            units.push(u.clone());
            units.push(-u);
        }
    }
    // Every prime of r is 2 or 3, each with exponent at most e in size.
    let within = |r: &BigRational| {
        let mut rest = r.numer().abs() * r.denom();
        for l in [2u32, 3] {
            let l = BigInt::from(l);
            let mut v = 0i64;
            for (x, sign) in [(r.numer().clone(), 1), (r.denom().clone(), -1)] {
                let mut x = x;
                while x.is_multiple_of(&l) {
                    x /= &l;
                    v += sign;
                }
            }
            while rest.is_multiple_of(&l) {
                rest /= &l;
            }
            if v.unsigned_abs() > e as u64 {
                return false;
            }
        }
        rest.is_one()
    };
    let mut out = HashSet::new();
    for a in &units {
        for c in &units {
            if !a.gcd(c).is_one() {
                continue;
            }
            let x1 = BigRational::new(a.clone(), c.clone());
            let x2 = BigRational::new(c - a, c.clone());
            if !x2.is_zero() && within(&x1) && within(&x2) {
                out.insert((x1, x2));
            }
        }
    }
    out
}

#[test]
fn criterion_10_sunit_solver() {
    let start = Instant::now();
    let outcome = (|| {
        let r = sunit_solve(&q(1, 1), &q(1, 1), &set(&[2, 3]), 12).map_err(|e| e.to_string())?;
        let got: HashSet<(BigRational, BigRational)> = r
            .solutions
            .iter()
            .map(|s| (s.x1.clone(), s.x2.clone()))
            .collect();
        let oracle = sunit_oracle(12);
        check(got == oracle, || {
            format!(
                "{} solutions vs {} from the oracle",
                got.len(),
                oracle.len()
            )
        })?;
        check(got.len() == 21, || {
            format!("{} solutions, baseline 21", got.len())
        })?;
        for (a, b) in [
            (q(1, 2), q(1, 2)),
            (q(3, 1), q(-2, 1)),
            (q(9, 1), q(-8, 1)),
            (q(-1, 8), q(9, 8)),
        ] {
            check(got.contains(&(a.clone(), b.clone())), || {
                format!("missing ({a}, {b})")
            })?;
        }
        Ok("21 solutions, equal to the additive-triple oracle".to_string())
    })();
    verdict(
        10,
        "S-unit equation over {2, 3}, E = 12",
        30,
        start,
        outcome,
    );
}

#[test]
fn criterion_11_convergent_mechanisms() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(11);
    let outcome = (|| {
        let sqrt2 = num("sqrt(2)");
        let rows = triple_decompose_scan(&sqrt2, &set(&[2, 3, 5]), 200, &policy())
            .map_err(|e| e.to_string())?;
        let qs: Vec<BigInt> = convergents(&sqrt2, 202, &policy())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|c| c.q)
            .collect();
        check(rows.len() == 200, || format!("{} rows", rows.len()))?;
        for r in &rows {
            let n = r.n;
            let product = &qs[n - 1] * &qs[n] * &qs[n + 1];
            let g = product.gcd(&(&qs[n + 1] - &qs[n - 1]));
            check(r.product == product && g.is_multiple_of(&qs[n]), || {
                format!("divisibility fails at n = {n}")
            })?;
        }
        let s = set(&[2, 3, 5, 7]);
        for _ in 0..100 {
            let qq = BigInt::from(rng.gen_range(2u64..=1_000_000));
            let d = lambda_q_decompose(&sqrt2, &qq, &s, &policy()).map_err(|e| e.to_string())?;
            let mut recombined = BigRational::new(d.a_q.clone(), d.a_p.clone());
            for (&l, &b) in s.primes().iter().zip(&d.exponents) {
                let lb = BigRational::from_integer(BigInt::from(l).pow(b.unsigned_abs() as u32));
                recombined = if b >= 0 {
                    recombined * lb
                } else {
                    recombined / lb
                };
            }
            check(
                recombined == BigRational::new(qq.clone(), d.p.clone()),
                || format!("recombination fails at q = {qq}"),
            )?;
            check(
                d.lambda_lower.is_positive()
                    && d.lambda_upper <= BigRational::new(BigInt::one(), d.p.clone()),
                || format!("Lambda_q not certified at q = {qq}"),
            )?;
        }
        Ok("q_n | gcd for n ≤ 200; 100 random q recombine with 0 < Λ_q ≤ 1/p".to_string())
    })();
    verdict(11, "convergent denominators and Λ_q", 60, start, outcome);
}

#[test]
fn criterion_12_exponent_trends() {
    let start = Instant::now();
    let outcome = (|| {
        let budget = FactorBudget {
            rho_iterations: 20_000,
        };
        let conv =
            convergent_spart_scan(&num("sqrt(2)"), &set(&[2, 3, 5]), 200, &budget, &policy())
                .map_err(|e| e.to_string())?
                .series;

        let s = set(&[5, 7, 11]);
        let grid = power_sum_grid(2, 6, 40, 40).map_err(|e| e.to_string())?;
        let parts: Vec<_> = grid.iter().map(|p| s_part(&p.value, &s)).collect();
        let power = spart_series(
            "powersum",
            grid.iter().map(|p| (p.m + p.n) as u64).zip(&parts),
            2,
            80,
        );

        let coeffs: Vec<BigInt> = vec![0.into(), 1.into(), 1.into()];
        let rows = poly_value_scan(&coeffs, 1, 10_000, &set(&[2, 3])).map_err(|e| e.to_string())?;
        let poly = spart_series(
            "poly",
            rows.iter().map(|r| (r.n as u64, &r.decomposition)),
            1,
            10_000,
        );

        let mut detail = Vec::new();
        for (name, series, baseline) in [
            ("convergents", conv, 0.039175315470596335),
            ("powersum", power, 0.18814874034052143),
            ("poly", poly, 0.6971715935757671),
        ] {
            let top = series.tail_max().ok_or(format!("{name}: empty tail"))?;
            check(top.value < 1.0, || {
                format!("{name}: tail max {} not below 1", top.value)
            })?;
            check((top.value - baseline).abs() <= 0.02, || {
                format!("{name}: {} vs baseline {baseline}", top.value)
            })?;
            detail.push(format!("{name} {:.4}", top.value));
        }
        Ok(format!("tail maxima {}", detail.join(", ")))
    })();
    verdict(12, "exponent trend regression", 120, start, outcome);
}
