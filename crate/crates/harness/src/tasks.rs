//! One function per task kind, each producing rows and summary statistics.

use dioph_core::algebraic::{check_power_gap, Algebraic, GapOutcome, Magnitude, PrecisionPolicy};
use dioph_core::arith::{factorize, s_part, PrimeSet, SPartDecomposition};
use dioph_core::bounds::{
    coefficient_bound, invert_linear_log, lower_bound, padic_log_form_bound, BoundConstants,
    LogFormInput, LowerBoundVariant,
};
use dioph_core::cfrac::{
    cf_expand, irrationality_exponent_series, legendre_filter, nu_series, simultaneous_scan,
    vb_series,
};
use dioph_core::convergent_spart::{
    convergent_spart_scan, lambda_q_decompose, triple_decompose_scan, triple_series, GreatestPrime,
};
use dioph_core::padic::{hensel_root, mult_exponent_scan};
use dioph_core::sequences::{
    almost_power_frontier, binary_form_scan, dominant_root, poly_value_scan, power_sum_grid,
    recurrence_values, sparse_digit_sequence, spart_series, srl_delta, sunit_solve,
    t_unit_sum_scan, DeltaOutcome, Dominance, RecurrenceSpec, SparseDigitSpec,
};
use dioph_core::series::ExponentSeries;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::config::{ScanConfig, Task};
use crate::report::Report;
use crate::RunError;

fn number(s: &str) -> Result<Algebraic, RunError> {
    s.parse::<Algebraic>()
        .map_err(|e| RunError::Invalid(e.to_string()))
}

fn integer(s: &str) -> Result<BigInt, RunError> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| RunError::Invalid(format!("not an integer: {s:?}")))
}

fn integers(v: &[String]) -> Result<Vec<BigInt>, RunError> {
    v.iter().map(|s| integer(s)).collect()
}

fn rational(s: &str) -> Result<BigRational, RunError> {
    match number(s)? {
        Algebraic::Rational(r) => Ok(r),
        _ => Err(RunError::Invalid(format!("not a rational number: {s:?}"))),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or(String::new(), |v| v.to_string())
}

fn spart_cells(d: &SPartDecomposition) -> [String; 2] {
    [d.s_part.to_string(), opt(d.exponent())]
}

fn ln_bounds(m: &Magnitude) -> [String; 2] {
    match m.ln_bounds() {
        Some((lo, hi)) => [lo.to_string(), hi.to_string()],
        None => ["-inf".into(), "-inf".into()],
    }
}

fn series_stats(report: &mut Report, series: &ExponentSeries) {
    if let Some(p) = series.tail_max() {
        report.track("tail_max", p.value, Some(p.index));
    }
    if let Some(p) = series.max() {
        report.track("max", p.value, Some(p.index));
    }
    report.note("tail_from", series.tail_from);
    report.note("excluded", series.excluded.len());
}

/// One row per index: the point, or the reason it is undefined.
fn series_report(series: &ExponentSeries) -> Report {
    let mut report = Report::new(&["index", "value", "lower", "upper", "excluded"]);
    let mut cells: Vec<(u64, Vec<String>)> = series
        .points
        .iter()
        .map(|p| {
            let v = vec![
                p.index.to_string(),
                p.value.to_string(),
                p.lower.to_string(),
                p.upper.to_string(),
                String::new(),
            ];
            (p.index, v)
        })
        .chain(series.excluded.iter().map(|e| {
            let v = vec![
                e.index.to_string(),
                String::new(),
                String::new(),
                String::new(),
                e.reason.clone(),
            ];
            (e.index, v)
        }))
        .collect();
    cells.sort_by_key(|c| c.0);
    for (_, row) in cells {
        report.row(row);
    }
    series_stats(&mut report, series);
    report
}

fn spart_scan_report(
    label: &str,
    values: &[(u64, BigInt)],
    s: &PrimeSet,
    first: u64,
    last: u64,
    value_col: &str,
) -> Report {
    let parts: Vec<SPartDecomposition> = values.par_iter().map(|(_, v)| s_part(v, s)).collect();
    let mut report = Report::new(&[label, value_col, "s_part", "exponent"]);
    for ((i, v), d) in values.iter().zip(&parts) {
        let [sp, ex] = spart_cells(d);
        report.row(vec![i.to_string(), v.to_string(), sp, ex]);
    }
    let series = spart_series(
        value_col,
        values.iter().map(|(i, _)| *i).zip(&parts),
        first,
        last,
    );
    series_stats(&mut report, &series);
    report
}

pub fn execute(config: &ScanConfig) -> Result<Report, RunError> {
    let policy = config.policy();
    match &config.task {
        Task::Factor { n } => factor(&integer(n)?, config),
        Task::Spart { n, primes } => {
            let d = s_part(&integer(n)?, primes);
            let mut report = Report::new(&["n", "s_part", "cofactor", "exponent"]);
            let [sp, ex] = spart_cells(&d);
            report.row(vec![d.n.to_string(), sp, d.cofactor.to_string(), ex]);
            Ok(report)
        }
        Task::Cf { number: x, count } => cf(&number(x)?, *count, &policy),
        Task::Legendre { number: x, q_max } => {
            let mut report = Report::new(&["p", "q"]);
            let found = legendre_filter(&number(x)?, *q_max, &policy)?;
            report.stat("count", found.len() as f64, None);
            for (p, q) in found {
                report.row(vec![p.to_string(), q.to_string()]);
            }
            Ok(report)
        }
        Task::Mu { number: x, count } => Ok(series_report(&irrationality_exponent_series(
            &number(x)?,
            *count,
            &policy,
        )?)),
        Task::Vb {
            number: x,
            base,
            n_max,
        } => Ok(series_report(&vb_series(
            &number(x)?,
            *base,
            *n_max,
            &policy,
        )?)),
        Task::Simul { xi, zeta, q_max } => simul(&number(xi)?, &number(zeta)?, *q_max, &policy),
        Task::Nu { number: x, n_max } => nu(&number(x)?, *n_max, &policy),
        Task::Pmult {
            p,
            t,
            m,
            branch,
            x_max,
            max_precision,
        } => {
            let alpha = hensel_root(
                &integer(t)?,
                &integer(m)?,
                *p,
                8.min(*max_precision),
                *branch,
            )?;
            let scan = mult_exponent_scan(&alpha, *x_max, *max_precision)?;
            let mut report = Report::new(&["a", "b", "size", "valuation", "exponent"]);
            for r in &scan.rows {
                let cells = [
                    r.a.to_string(),
                    r.b.to_string(),
                    r.size().to_string(),
                    r.valuation.to_string(),
                    r.exponent.to_string(),
                ];
                report.row(cells.to_vec());
            }
            if let Some(r) = scan.tail_best() {
                report.track("tail_max", r.exponent, Some(r.size()));
            }
            if let Some(r) = scan.best() {
                report.track("max", r.exponent, Some(r.size()));
            }
            report.note("precision", scan.precision);
            report.note("alpha_residue", alpha.residue());
            report.note("tail_from", scan.series.tail_from);
            Ok(report)
        }
        Task::BoundsEval { input, delta } => {
            bounds_eval(input, config.constants.clone().unwrap_or_default(), *delta)
        }
        Task::BoundsInvert { k, h, e } => {
            let x = invert_linear_log(*k, *h, *e)?;
            let mut report = Report::new(&["k", "h", "e", "x"]);
            report.row(vec![k.to_string(), h.to_string(), e.to_string(), opt(x)]);
            if let Some(x) = x {
                report.stat("x", x, None);
            }
            Ok(report)
        }
        Task::Sparse {
            base,
            max_digits,
            count,
            primes,
        } => {
            let spec = SparseDigitSpec::new(*base, *max_digits)?;
            let values: Vec<(u64, BigInt)> = sparse_digit_sequence(&spec, *count)
                .into_iter()
                .enumerate()
                .map(|(j, u)| (j as u64 + 1, BigInt::from(u)))
                .collect();
            Ok(spart_scan_report(
                "j",
                &values,
                primes,
                1,
                *count as u64,
                "u_j",
            ))
        }
        Task::Recurrence {
            coefficients,
            initial,
            n_max,
            primes,
        } => {
            let spec = RecurrenceSpec::new(integers(coefficients)?, integers(initial)?)?;
            let values: Vec<(u64, BigInt)> = recurrence_values(&spec, *n_max)
                .into_iter()
                .enumerate()
                .map(|(n, u)| (n as u64, u))
                .collect();
            let mut report = spart_scan_report("n", &values, primes, 0, *n_max as u64, "u_n");
            let dom = dominant_root(&spec, config.precision.max_bits);
            report.note(
                "dominance",
                match dom.dominance {
                    Dominance::Dominant => "dominant",
                    Dominance::NotDominant => "not_dominant",
                    Dominance::Unknown => "unknown",
                },
            );
            if let Some((lo, hi)) = &dom.root {
                report.note("dominant_root", format!("[{lo}, {hi}]"));
            }
            if let Some(m) = dom.multiplicity {
                report.note("multiplicity", m);
            }
            if let Some(d) = dom.degenerate {
                report.note("degenerate", d);
            }
            match srl_delta(&spec, primes)? {
                DeltaOutcome::Value(d) => report.stat("delta", d, None),
                DeltaOutcome::Unsupported(why) => {
                    report.note("delta", format!("unsupported: {why}"))
                }
            }
            Ok(report)
        }
        Task::Powersum {
            a,
            b,
            m_max,
            n_max,
            primes,
        } => {
            let grid = power_sum_grid(*a, *b, *m_max, *n_max)?;
            let parts: Vec<SPartDecomposition> =
                grid.par_iter().map(|p| s_part(&p.value, primes)).collect();
            let mut report = Report::new(&["m", "n", "value", "case", "s_part", "exponent"]);
            for (p, d) in grid.iter().zip(&parts) {
                let [sp, ex] = spart_cells(d);
                report.row(vec![
                    p.m.to_string(),
                    p.n.to_string(),
                    p.value.to_string(),
                    p.case.name().into(),
                    sp,
                    ex,
                ]);
            }
            let idx = grid.iter().map(|p| (p.m + p.n) as u64);
            let series = spart_series("powersum", idx.zip(&parts), 2, (*m_max + *n_max) as u64);
            series_stats(&mut report, &series);
            Ok(report)
        }
        Task::Tunits {
            t_primes,
            e,
            primes,
        } => {
            let rows = t_unit_sum_scan(t_primes, *e, primes)?;
            let mut report = Report::new(&["x", "y", "sum", "s_part", "exponent"]);
            let mut best: Option<f64> = None;
            for r in &rows {
                let [sp, ex] = spart_cells(&r.decomposition);
                report.row(vec![
                    r.x.to_string(),
                    r.y.to_string(),
                    r.sum.to_string(),
                    sp,
                    ex,
                ]);
                if let Some(e) = r.decomposition.exponent() {
                    best = Some(best.map_or(e, |b| b.max(e)));
                }
            }
            if let Some(b) = best {
                report.track("max", b, None);
            }
            report.note("rows", rows.len());
            Ok(report)
        }
        Task::Poly {
            coefficients,
            lo,
            hi,
            primes,
        } => {
            if *lo < 0 {
                return Err(RunError::Invalid(
                    "poly scans need lo >= 0; substitute -X for negative arguments".into(),
                ));
            }
            let rows = poly_value_scan(&integers(coefficients)?, *lo, *hi, primes)?;
            let mut report = Report::new(&["n", "value", "s_part", "exponent"]);
            for r in &rows {
                let [sp, ex] = spart_cells(&r.decomposition);
                report.row(vec![r.n.to_string(), r.value.to_string(), sp, ex]);
            }
            let series = spart_series(
                "poly",
                rows.iter().map(|r| (r.n as u64, &r.decomposition)),
                *lo as u64,
                *hi as u64,
            );
            series_stats(&mut report, &series);
            Ok(report)
        }
        Task::Form {
            coefficients,
            height,
            primes,
        } => {
            let rows = binary_form_scan(&integers(coefficients)?, *height, primes)?;
            let mut report = Report::new(&["x", "y", "value", "s_part", "exponent"]);
            for r in &rows {
                let [sp, ex] = spart_cells(&r.decomposition);
                report.row(vec![
                    r.x.to_string(),
                    r.y.to_string(),
                    r.value.to_string(),
                    sp,
                    ex,
                ]);
            }
            let series = spart_series(
                "form",
                rows.iter().map(|r| (r.height(), &r.decomposition)),
                1,
                *height,
            );
            series_stats(&mut report, &series);
            Ok(report)
        }
        Task::Convergents {
            number: x,
            n_max,
            primes,
        } => {
            let scan =
                convergent_spart_scan(&number(x)?, primes, *n_max, &config.budget(), &policy)?;
            let mut report = Report::new(&[
                "n",
                "p_n",
                "q_n",
                "s_part_p",
                "s_part_q",
                "s_part_pq",
                "exponent",
                "greatest_prime",
                "gpf_exact",
            ]);
            let mut incomplete = 0;
            for r in &scan.rows {
                let (gp, exact) = match &r.greatest_prime {
                    Some(GreatestPrime::Exact(p)) => (p.to_string(), "true"),
                    Some(GreatestPrime::AtLeast(p)) => {
                        incomplete += 1;
                        (p.to_string(), "false")
                    }
                    None => (String::new(), ""),
                };
                report.row(vec![
                    r.n.to_string(),
                    r.p.to_string(),
                    r.q.to_string(),
                    r.p_part.s_part.to_string(),
                    r.q_part.s_part.to_string(),
                    r.pq_part.s_part.to_string(),
                    opt(r.exponent),
                    gp,
                    exact.into(),
                ]);
            }
            series_stats(&mut report, &scan.series);
            report.note("gpf_lower_bounds_only", incomplete);
            Ok(report)
        }
        Task::Triples {
            number: x,
            n_max,
            primes,
        } => {
            let rows = triple_decompose_scan(&number(x)?, primes, *n_max, &policy)?;
            let mut report = Report::new(&[
                "n",
                "q_prev",
                "q_n",
                "q_next",
                "product",
                "a",
                "exponents",
                "big_b",
                "h_star",
                "gcd",
                "exponent",
            ]);
            for r in &rows {
                let [a, b, c] = &r.denominators;
                let exps: Vec<String> = r.exponents.iter().map(|e| e.to_string()).collect();
                report.row(vec![
                    r.n.to_string(),
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                    r.product.to_string(),
                    r.a.to_string(),
                    exps.join(";"),
                    r.big_b.to_string(),
                    r.h_star.to_string(),
                    r.gcd.to_string(),
                    r.exponent.to_string(),
                ]);
            }
            series_stats(&mut report, &triple_series(&rows, *n_max));
            Ok(report)
        }
        Task::Frontier { n, q_max, y_max } => {
            let n: BigUint = integer(n)?
                .to_biguint()
                .ok_or_else(|| RunError::Invalid("n must be positive".into()))?;
            let rows = almost_power_frontier(&n, *q_max, *y_max)?;
            let mut report = Report::new(&["q", "y", "a", "h_star", "ratio"]);
            for r in &rows {
                report.row(vec![
                    r.q.to_string(),
                    r.y.to_string(),
                    r.a.to_string(),
                    r.h_star.to_string(),
                    r.ratio.to_string(),
                ]);
            }
            if let Some(r) = rows
                .iter()
                .max_by(|a, b| a.ratio.total_cmp(&b.ratio).then(b.q.cmp(&a.q)))
            {
                report.track("max_ratio", r.ratio, Some(r.q));
            }
            Ok(report)
        }
        Task::Lambdaq {
            number: x,
            q_min,
            q_max,
            primes,
        } => {
            let xi = number(x)?;
            let rows = (*q_min..=*q_max)
                .into_par_iter()
                .map(|q| lambda_q_decompose(&xi, &BigInt::from(q), primes, &policy))
                .collect::<Result<Vec<_>, _>>()?;
            let mut report = Report::new(&[
                "q",
                "p",
                "a_p",
                "a_q",
                "exponents",
                "big_b",
                "h_star",
                "ln_lambda_upper",
            ]);
            for d in &rows {
                let exps: Vec<String> = d.exponents.iter().map(|e| e.to_string()).collect();
                let ln_up = d.lambda_upper.numer().to_f64().unwrap_or(f64::NAN).ln()
                    - d.lambda_upper.denom().to_f64().unwrap_or(f64::NAN).ln();
                report.row(vec![
                    d.q.to_string(),
                    d.p.to_string(),
                    d.a_p.to_string(),
                    d.a_q.to_string(),
                    exps.join(";"),
                    d.big_b.to_string(),
                    d.h_star.to_string(),
                    ln_up.to_string(),
                ]);
            }
            report.note("certified", rows.len());
            Ok(report)
        }
        Task::Sunit { a1, a2, primes, e } => {
            let sol = sunit_solve(&rational(a1)?, &rational(a2)?, primes, *e)?;
            let mut report = Report::new(&["x1", "x2", "h1", "h2"]);
            for s in &sol.solutions {
                report.row(vec![
                    s.x1.to_string(),
                    s.x2.to_string(),
                    s.h1.to_string(),
                    s.h2.to_string(),
                ]);
            }
            report.track("solutions", sol.solutions.len() as f64, None);
            report.stat("max_height", sol.max_height, None);
            report.note("radius", sol.radius);
            Ok(report)
        }
    }
}

fn factor(n: &BigInt, config: &ScanConfig) -> Result<Report, RunError> {
    let map = factorize(n, &config.budget())?;
    let mut report = Report::new(&["factor", "exponent", "status"]);
    for (p, e) in map.factors() {
        report.row(vec![p.to_string(), e.to_string(), "prime".into()]);
    }
    if !map.is_complete() {
        report.row(vec![
            map.unfactored().to_string(),
            "1".into(),
            "unfactored".into(),
        ]);
    }
    report.note("complete", map.is_complete());
    Ok(report)
}

fn cf(x: &Algebraic, count: usize, policy: &PrecisionPolicy) -> Result<Report, RunError> {
    let records = cf_expand(x, count, policy)?;
    let mut report = Report::new(&["n", "a_n", "p_n", "q_n", "ln_error_lower", "ln_error_upper"]);
    for r in &records {
        let [lo, hi] = ln_bounds(&r.error);
        report.row(vec![
            r.index.to_string(),
            r.partial_quotient.to_string(),
            r.p.to_string(),
            r.q.to_string(),
            lo,
            hi,
        ]);
    }
    report.note("terms", records.len());
    Ok(report)
}

fn simul(
    xi: &Algebraic,
    zeta: &Algebraic,
    q_max: u64,
    policy: &PrecisionPolicy,
) -> Result<Report, RunError> {
    let scan = simultaneous_scan(xi, zeta, q_max, policy)?;
    let mut report = Report::new(&[
        "q",
        "p",
        "r",
        "ln_max_distance",
        "norm_exponent",
        "exponent",
    ]);
    for r in &scan.rows {
        report.row(vec![
            r.q.to_string(),
            r.p.to_string(),
            r.r.to_string(),
            r.ln_max_distance.to_string(),
            r.norm_exponent.to_string(),
            r.exponent.to_string(),
        ]);
    }
    series_stats(&mut report, &scan.series);
    if let Some(p) = scan.norm_series.tail_max() {
        report.stat("norm_tail_max", p.value, Some(p.index));
    }
    report.note("running_best", scan.running_best().len());
    Ok(report)
}

fn nu(xi: &Algebraic, n_max: u32, policy: &PrecisionPolicy) -> Result<Report, RunError> {
    let nu = nu_series(xi, n_max, policy)?;
    let checks = (1..=n_max)
        .into_par_iter()
        .map(|n| check_power_gap(xi, n, policy))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(&[
        "n",
        "nu_n",
        "lower",
        "upper",
        "ln_distance",
        "ln_gap_bound",
        "gap",
    ]);
    let mut violations = 0;
    for c in &checks {
        let point = nu.series.points.iter().find(|p| p.index == c.n as u64);
        let [v, lo, hi] = match point {
            Some(p) => [
                p.value.to_string(),
                p.lower.to_string(),
                p.upper.to_string(),
            ],
            None => Default::default(),
        };
        let gap = match c.outcome {
            GapOutcome::Holds => "holds",
            GapOutcome::Violated => {
                violations += 1;
                "violated"
            }
            GapOutcome::IntegerPower => "integer_power",
        };
        let ln_d = if c.outcome == GapOutcome::IntegerPower {
            String::new()
        } else {
            c.ln_distance.to_string()
        };
        report.row(vec![
            c.n.to_string(),
            v,
            lo,
            hi,
            ln_d,
            c.ln_bound.to_string(),
            gap.into(),
        ]);
    }
    series_stats(&mut report, &nu.series);
    report.stat("ln_c", nu.ln_c, None);
    if let Some(r) = nu.reference {
        report.stat("reference", r, None);
    }
    report.note("gap_violations", violations);
    Ok(report)
}

fn bounds_eval(
    input: &LogFormInput,
    constants: BoundConstants,
    delta: Option<f64>,
) -> Result<Report, RunError> {
    input.validate()?;
    let mut report = Report::new(&["quantity", "value", "note"]);
    for v in LowerBoundVariant::ALL {
        match lower_bound(input, &constants, v) {
            Ok(b) => report.row(vec![v.name().into(), b.value.to_string(), String::new()]),
            Err(e) => report.row(vec![v.name().into(), String::new(), e.to_string()]),
        }
    }
    if input.prime.is_some() {
        let r = padic_log_form_bound(input, &constants)?;
        let branch = serde_json::to_value(r.branch).expect("branch serializes");
        let rows = [
            ("padic_plain", r.plain),
            ("padic_height_term", r.height_term),
            ("padic_linear_term", r.linear_term),
            ("padic_combined", r.combined),
            ("padic_small_b_threshold", r.small_b_threshold),
            ("padic_valuation_bound", r.valuation_bound),
            ("padic_valuation_bound_hmax", r.valuation_bound_hmax),
        ];
        for (name, v) in rows {
            report.row(vec![name.into(), v.to_string(), String::new()]);
        }
        report.row(vec![
            "padic_branch".into(),
            String::new(),
            branch.as_str().unwrap_or_default().into(),
        ]);
        if let Some(c) = r.conjectural {
            report.row(vec![
                "padic_conjectural".into(),
                c.to_string(),
                "open analogue".into(),
            ]);
        }
    }
    if let Some(d) = delta {
        let r = coefficient_bound(input, &constants, d)?;
        report.row(vec![
            "coefficient_bound".into(),
            r.bound.to_string(),
            format!("crossing = {}", r.crossing),
        ]);
    }
    report.note("constants", &constants.source);
    Ok(report)
}
