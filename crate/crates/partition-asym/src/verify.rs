//! Named verification suites behind `verify --suite ...`: seeded,
//! reproducible, and reported as JSON with one entry per check.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::asym::hr_constant;
use crate::count::{factorial, PartitionMultiset, PartitionTable};
use crate::error::Result;
use crate::expansion::{
    alternating_moment, alternating_poly_moment, g_leading_reference, Expansion, RatPoly,
};
use crate::ideals::oscillation::{
    oscillation_certificate, oscillation_sequence, zero_window_check, zero_window_check_stages,
    OscillationParams,
};
use crate::ideals::{cohen_remmel_check, interval_ideal_count, IntervalIdealSpec};
use crate::tolerances;
use crate::xreal::XReal;
use num_rational::BigRational;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: &str, seed: u64) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            seed,
            checks: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(CheckResult {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Exact alternating-identity suite: 1000 random tuples for both moment
/// cases plus 200 random polynomials of degree <= t-1.
pub fn suite_lemma32(seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new("lemma32", seed);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut failures = 0usize;
    let mut cases = 0usize;
    for _ in 0..1000 {
        let t = rng.gen_range(0..=8usize);
        let svals: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=1_000_000u64)).collect();
        for z in 0..t {
            cases += 1;
            if alternating_moment(&svals, z).unwrap() != BigInt::zero() {
                failures += 1;
            }
        }
        cases += 1;
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let expect = svals
            .iter()
            .fold(BigInt::from(factorial(t as u64)) * sign, |acc, &s| {
                acc * BigInt::from(s)
            });
        if alternating_moment(&svals, t).unwrap() != expect {
            failures += 1;
        }
    }
    report.push(
        "alternating moments over 1000 random tuples (t <= 8, s_i <= 10^6)",
        failures == 0,
        format!("{cases} exact checks, {failures} failures"),
    );

    let mut poly_failures = 0usize;
    for _ in 0..200 {
        let t = rng.gen_range(1..=8usize);
        let svals: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=1_000_000u64)).collect();
        let deg = rng.gen_range(0..t);
        let coeffs: Vec<BigRational> = (0..=deg)
            .map(|_| {
                BigRational::new(
                    rng.gen_range(-50i64..=50).into(),
                    rng.gen_range(1i64..=20).into(),
                )
            })
            .collect();
        let poly = RatPoly::new(coeffs);
        if !alternating_poly_moment(&svals, &poly).unwrap().is_zero() {
            poly_failures += 1;
        }
    }
    report.push(
        "polynomial generalization over 200 random polynomials (deg <= t-1)",
        poly_failures == 0,
        format!("{poly_failures} failures"),
    );
    report
}

/// Series-pipeline suite: a_0 = C, leading coefficients of g(z,s) for z <= 8,
/// degree bookkeeping, and normalized residuals within the pinned bounds.
pub fn suite_expansion(table: &PartitionTable, prec: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("expansion", 0);
    let tol = tolerances::coefficient_rel_tol(prec);
    let tol_x = XReal::from_f64(tol, prec);

    let e8 = Expansion::new(8, prec)?;
    let c = hr_constant(prec);
    let a0 = &e8.a_coeffs()[0];
    let a0_rel = a0.sub(&c).div(&c).abs();
    report.push(
        "a_0 equals C at working precision",
        a0_rel < tol_x,
        format!("relative deviation {}", a0_rel),
    );

    let mut worst = XReal::zero(prec);
    let mut lead_ok = true;
    for z in 0..=8usize {
        let lead = e8.g_poly(z).coeff(z);
        let reference = g_leading_reference(z, prec);
        let rel = lead.sub(&reference).div(&reference).abs();
        worst = worst.max(&rel);
        lead_ok &= rel < tol_x;
    }
    report.push(
        "leading coefficient of g(z,s) is (-1)^z C^{z+1}/(2^z z!) for z <= 8",
        lead_ok,
        format!("worst relative deviation {}", worst),
    );

    let mut deg_ok = true;
    for z in 0..=8usize {
        deg_ok &= e8.g_poly(z).degree() == Some(z);
    }
    for w in 0..=16usize {
        deg_ok &= e8.f_poly(w).degree() == Some(w / 2);
    }
    for i in 0..=8usize {
        deg_ok &= e8.d_poly(i).degree() == Some(i);
    }
    report.push("degrees: g(z) = z, f(w) = floor(w/2), d(i) = i", deg_ok, "");

    for (t, bound) in tolerances::EXPANSION_RESIDUAL_BOUND.iter().enumerate() {
        let e = Expansion::new(t, prec)?;
        let bound_x = XReal::from_f64(*bound, prec);
        let mut max_res = XReal::zero(prec);
        for &n in &[10_000u64, 40_000] {
            for &s in &[1u64, 3, 7] {
                let r = e.verify(n, s, table)?.abs();
                max_res = max_res.max(&r);
            }
        }
        report.push(
            format!("normalized residual bounded at t = {t}"),
            max_res < bound_x,
            format!("max |residual| {} vs pinned bound {bound}", max_res),
        );
    }

    let mut shrink_ok = true;
    let mut last: Option<XReal> = None;
    for t in 0..=2usize {
        let e = Expansion::new(t, prec)?;
        let raw = e.raw_residual(40_000, 3, table)?.abs();
        if let Some(prev) = &last {
            shrink_ok &= raw < *prev;
        }
        last = Some(raw);
    }
    report.push(
        "raw residual at n = 4*10^4 shrinks as t grows",
        shrink_ok,
        "t = 0, 1, 2",
    );
    Ok(report)
}

/// Euler-pair suite: distinct-parts vs odd-parts ideals through the
/// union-norm hypothesis and both counting algorithms for n <= 40.
pub fn suite_cohen_remmel(table: &PartitionTable) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("cohen-remmel", 0);
    let lambda: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[i, i]).expect("valid"))
        .collect();
    let gamma: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[2 * i]).expect("valid"))
        .collect();
    let cr = cohen_remmel_check(&lambda, &gamma, 40, table)?;
    report.push(
        "union-norm hypothesis over all 2^10 index sets",
        cr.hypothesis_holds,
        format!("{} violations", cr.violated_total),
    );
    report.push(
        "p_{-Lambda}(n) = p_{-Gamma}(n) for n <= 40 by enumeration and inclusion-exclusion",
        cr.count_mismatches.is_empty(),
        format!("mismatches at {:?}", cr.count_mismatches),
    );
    let ten = cr
        .rows
        .get(10)
        .map(|r| r.lambda_count.clone())
        .unwrap_or_default();
    report.push(
        "both ideals count 10 at n = 10",
        ten == 10u32.into(),
        format!("count {}", ten),
    );
    Ok(report)
}

/// Oscillating-ideal suite. `toy_only` restricts to the exact toy-scale
/// checks; the full suite adds the true-sequence windows and the stage-1
/// log-space certificate.
pub fn suite_oscillation(
    toy_only: bool,
    table: &PartitionTable,
    prec: usize,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("oscillation", 0);

    let toy = IntervalIdealSpec::new(vec![(2, 3)])?;
    let window = zero_window_check(&toy, 1)?;
    let count28 = interval_ideal_count(28, &toy)?;
    report.push(
        "toy spec (2,3): zero window at s_2 - 1 = 28",
        window && count28.is_zero(),
        format!("mass check {window}, DP count {count28}"),
    );
    let count5 = interval_ideal_count(5, &toy)?;
    report.push(
        "toy spec (2,3): exactly one partition of 5",
        count5 == 1u32.into(),
        format!("DP count {count5}"),
    );
    let tight = IntervalIdealSpec::new(vec![(2, 3), (10, 12)])?;
    report.push(
        "constructed counterexample: window closes when s_2 <= mass + 1",
        !zero_window_check(&tight, 1)?,
        "stages (2,3),(10,12)",
    );

    if !toy_only {
        let params = OscillationParams::new(XReal::from_f64(0.5, prec), 10_000, prec)?;
        let stages = oscillation_sequence(&params, 2)?;
        let w1 = zero_window_check_stages(&stages, 1, prec)?;
        let w2 = zero_window_check_stages(&stages, 2, prec)?;
        report.push(
            "true sequence (eps = 1/2): zero windows at stages 1 and 2",
            w1 && w2,
            format!(
                "t_1 = {}, t_2 = {}",
                stages[0].t.describe(),
                stages[1].t.describe()
            ),
        );
        let cert = oscillation_certificate(&params, &stages, 1, table)?;
        report.push(
            "stage-1 certificate margins all positive",
            cert.all_margins_positive,
            format!(
                "ineq11 {}, squeeze {}, factor {}",
                cert.ineq11_margin.to_f64_lossy(),
                cert.squeeze_margin.to_f64_lossy(),
                cert.factor_margin.to_f64_lossy()
            ),
        );
        report.push(
            "threshold hypothesis verified exactly at n = t_1 and n = ceil(t_1 f(t_1))",
            cert.hypothesis.exact
                && cert.hypothesis.hr_sandwich_ok == Some(true)
                && cert.hypothesis.comp_ratio_ok == Some(true)
                && cert.hypothesis_tf.exact
                && cert.hypothesis_tf.hr_sandwich_ok == Some(true),
            format!("n = {:?} and {:?}", cert.hypothesis.n, cert.hypothesis_tf.n),
        );
    }
    Ok(report)
}
