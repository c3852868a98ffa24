//! Acceptance suite: every release criterion as one test with a printed
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; tolerances live in `partition_asym::tolerances` with
//! their measured origins.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use partition_asym::asym::{self, PMode};
use partition_asym::count::{
    enumerate_partitions, factorial, global_table, PartSet, PartitionMultiset,
};
use partition_asym::expansion::{
    alternating_moment, alternating_poly_moment, g_leading_reference, Expansion, RatPoly,
};
use partition_asym::ideals::oscillation::{
    oscillation_certificate, oscillation_sequence, zero_window_check, OscillationParams,
};
use partition_asym::ideals::{self, cohen_remmel_check, interval_ideal_count, IntervalIdealSpec};
use partition_asym::tolerances;
use partition_asym::xreal::XReal;

const P: usize = 256;

#[test]
fn criterion_01_exact_count_cross_validation() {
    let started = Instant::now();
    let t = global_table();

    // Three-way agreement for n <= 60: pentagonal, allowed-parts DP over
    // {1..60}, and the enumeration oracle.
    let allowed = PartSet::new(1..=60).unwrap();
    let dp_table = t.restricted_table(60, &allowed).unwrap();
    for n in 0..=60u64 {
        let pentagonal = t.partition_count(n).unwrap();
        let by_enum = enumerate_partitions(n).unwrap().count();
        assert_eq!(pentagonal, dp_table[n as usize], "DP mismatch at n = {n}");
        assert_eq!(pentagonal, BigUint::from(by_enum), "enum mismatch at n = {n}");
    }

    // Pentagonal vs DP for all n <= 5000.
    let allowed = PartSet::new(1..=5000).unwrap();
    let dp_table = t.restricted_table(5000, &allowed).unwrap();
    for n in (0..=5000u64).step_by(1) {
        assert_eq!(
            t.partition_count(n).unwrap(),
            dp_table[n as usize],
            "mismatch at n = {n}"
        );
    }

    assert_eq!(t.partition_count(100).unwrap(), BigUint::from(190_569_292u64));

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!(
        "[PASS] criterion 1: pentagonal/DP/enumeration agree (n <= 60 three-way, n <= 5000 two-way), p(100) pinned; {elapsed:?}"
    );
}

#[test]
fn criterion_02_inclusion_exclusion_equivalence() {
    let started = Instant::now();
    let t = global_table();
    let mut rng = ChaCha12Rng::seed_from_u64(0xC0FFEE);
    for case in 0..500 {
        let n = rng.gen_range(0..=2000u64);
        let size = rng.gen_range(0..=6usize);
        let mut parts = std::collections::BTreeSet::new();
        while parts.len() < size {
            parts.insert(rng.gen_range(1..=50u64));
        }
        let s = PartSet::new(parts).unwrap();
        let dp = t.avoiding_count_dp(n, &s).unwrap();
        let ie = t.avoiding_count_ie(n, &s).unwrap();
        assert_eq!(dp, ie, "case {case}: n = {n}, S = {s}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!("[PASS] criterion 2: avoiding DP = inclusion-exclusion on 500 random cases (n <= 2000, |S| <= 6); {elapsed:?}");
}

#[test]
fn criterion_03_strong_asymptotic_convergence() {
    let t = global_table();
    let mut last: Option<XReal> = None;
    let mut final_err = XReal::zero(P);
    for n in [100u64, 200, 400, 800, 1600, 3200] {
        let exact = XReal::from_biguint(&t.partition_count(n).unwrap(), P);
        let err = asym::hr_strong(n, P).sub(&exact).div(&exact).abs();
        if let Some(prev) = &last {
            assert!(err < *prev, "|ratio - 1| must strictly decrease at n = {n}");
        }
        final_err = err.clone();
        last = Some(err);
    }
    let pin = XReal::from_f64(tolerances::HR_STRONG_REL_AT_3200, P);
    assert!(
        final_err < pin,
        "final error {final_err} vs pinned {}",
        tolerances::HR_STRONG_REL_AT_3200
    );
    println!(
        "[PASS] criterion 3: strong-asymptotic relative error strictly decreasing on the doubling grid; {:.3e} < {:.0e} at n = 3200",
        final_err.to_f64_lossy(),
        tolerances::HR_STRONG_REL_AT_3200
    );
}

#[test]
fn criterion_04_complementary_schur_convergence() {
    let started = Instant::now();
    let t = global_table();
    let grid = [2500u64, 10_000, 40_000];
    let cases: [(&[u64], f64); 4] = [
        (&[1], tolerances::COMP_SCHUR_FINAL_S1),
        (&[2], tolerances::COMP_SCHUR_FINAL_S2),
        (&[2, 3], tolerances::COMP_SCHUR_FINAL_S23),
        (&[1, 5, 6], tolerances::COMP_SCHUR_FINAL_S156),
    ];
    for (parts, pin) in cases {
        let s = PartSet::new(parts.iter().copied()).unwrap();
        let rows = asym::ratio_report(&grid, &s, PMode::Exact, t, P).unwrap();
        for w in rows.windows(2) {
            assert!(
                w[1].abs_err_ratio < w[0].abs_err_ratio,
                "S = {s}: |ratio - 1| must strictly decrease"
            );
        }
        let last = &rows.last().unwrap().abs_err_ratio;
        assert!(
            *last < XReal::from_f64(pin, P),
            "S = {s}: final |ratio - 1| = {last} vs pinned {pin}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}, budget 5 min");
    println!("[PASS] criterion 4: complementary-Schur ratio converges (4 forbidden sets, exact counts to 4*10^4); {elapsed:?}");
}

#[test]
fn criterion_05_alternating_identity_exactness() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let t = rng.gen_range(0..=8usize);
        let svals: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=1_000_000u64)).collect();
        for z in 0..t {
            assert_eq!(alternating_moment(&svals, z).unwrap(), BigInt::zero());
        }
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let expect = svals
            .iter()
            .fold(BigInt::from(factorial(t as u64)) * sign, |acc, &s| {
                acc * BigInt::from(s)
            });
        assert_eq!(alternating_moment(&svals, t).unwrap(), expect);
    }
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
        assert!(alternating_poly_moment(&svals, &RatPoly::new(coeffs))
            .unwrap()
            .is_zero());
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("[PASS] criterion 5: alternating identity exact on 1000 random tuples + 200 random polynomials; {elapsed:?}");
}

#[test]
fn criterion_06_expansion_pipeline() {
    let t = global_table();
    let tol = XReal::from_f64(tolerances::coefficient_rel_tol(P), P);

    let e8 = Expansion::new(8, P).unwrap();
    let c = asym::hr_constant(P);
    let a0_rel = e8.a_coeffs()[0].sub(&c).div(&c).abs();
    assert!(a0_rel < tol, "a_0 deviates from C by {a0_rel}");
    for z in 0..=8usize {
        let lead = e8.g_poly(z).coeff(z);
        let reference = g_leading_reference(z, P);
        let rel = lead.sub(&reference).div(&reference).abs();
        assert!(rel < tol, "g({z}) leading coefficient off by {rel}");
    }

    for (t_param, bound) in tolerances::EXPANSION_RESIDUAL_BOUND.iter().enumerate() {
        let e = Expansion::new(t_param, P).unwrap();
        for &n in &[10_000u64, 40_000] {
            for &s in &[1u64, 3, 7] {
                let r = e.verify(n, s, t).unwrap().abs();
                assert!(
                    r < XReal::from_f64(*bound, P),
                    "t = {t_param}, n = {n}, s = {s}: residual {r} vs pinned {bound}"
                );
            }
        }
    }
    println!("[PASS] criterion 6: a_0 = C, g-leading coefficients (z <= 8) within 2^-240, residuals within pins on the full grid");
}

#[test]
fn criterion_07_cohen_remmel_euler_pair() {
    let started = Instant::now();
    let t = global_table();
    let lambda: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[i, i]).unwrap())
        .collect();
    let gamma: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[2 * i]).unwrap())
        .collect();
    let report = cohen_remmel_check(&lambda, &gamma, 40, t).unwrap();
    assert!(report.hypothesis_holds, "union-norm hypothesis violated");
    assert!(
        report.count_mismatches.is_empty(),
        "count mismatches at {:?}",
        report.count_mismatches
    );
    assert_eq!(report.rows[10].lambda_count, BigUint::from(10u32));
    assert_eq!(report.rows[10].gamma_count, BigUint::from(10u32));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("[PASS] criterion 7: Euler pair passes hypothesis (all 2^10 index sets) and count equality for n <= 40; {elapsed:?}");
}

#[test]
fn criterion_08_toy_oscillation_and_certificate() {
    let t = global_table();
    let toy = IntervalIdealSpec::new(vec![(2, 3)]).unwrap();
    assert_eq!(interval_ideal_count(28, &toy).unwrap(), BigUint::zero());
    assert!(zero_window_check(&toy, 1).unwrap());

    let params = OscillationParams::new(XReal::from_f64(0.5, P), 10_000, P).unwrap();
    let stages = oscillation_sequence(&params, 1).unwrap();
    let cert = oscillation_certificate(&params, &stages, 1, t).unwrap();
    assert!(cert.ineq11_margin.is_positive(), "ineq11 margin {}", cert.ineq11_margin);
    assert!(cert.squeeze_margin.is_positive(), "squeeze margin {}", cert.squeeze_margin);
    assert!(cert.factor_margin.is_positive(), "factor margin {}", cert.factor_margin);
    assert!(cert.k_constant_ok);
    assert!(cert.all_margins_positive);
    println!(
        "[PASS] criterion 8: toy zero window exact (count(28) = 0), stage-1 certificate margins positive ({:.2}, {:.2}, {:.2})",
        cert.ineq11_margin.to_f64_lossy(),
        cert.squeeze_margin.to_f64_lossy(),
        cert.factor_margin.to_f64_lossy()
    );
}

#[test]
fn criterion_09_growth_exponent_probe() {
    let t = global_table();
    let grid: Vec<u64> = vec![2500, 3536, 5000, 7071, 10000, 14142, 20000, 28284, 40000];
    let cases: [(&[u64], f64); 2] = [(&[1], 0.5), (&[1, 2], 1.0)];
    let mut fitted = Vec::new();
    for (parts, k_expect) in cases {
        let s = PartSet::new(parts.iter().copied()).unwrap();
        let counts: Vec<(u64, BigUint)> = grid
            .iter()
            .map(|&n| (n, t.avoiding_count_ie(n, &s).unwrap()))
            .collect();
        let fit = ideals::fit_growth_exponent(&counts, P).unwrap();
        let dist = fit.k_hat.sub(&XReal::from_f64(k_expect, P)).abs();
        assert!(
            dist < XReal::from_f64(tolerances::FIT_K_TOLERANCE, P),
            "S = {s}: k_hat = {} vs expected {k_expect}",
            fit.k_hat
        );
        fitted.push(fit.k_hat.to_f64_lossy());
    }
    println!(
        "[PASS] criterion 9: exponent probe recovers k = 1/2 and k = 1 within 0.1 (k_hat = {:.4}, {:.4})",
        fitted[0], fitted[1]
    );
}

#[test]
fn criterion_10_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_partition-asym");
    let cases: Vec<Vec<&str>> = vec![
        vec!["count", "100"],
        vec!["count", "6", "--forbid", "1,2"],
        vec!["converge", "--s", "1", "--grid", "500,1000,2000"],
        vec!["converge", "--s", "2,3", "--grid", "500,1000", "--format", "json"],
        vec!["estimate", "1000", "--formula", "hr-strong"],
        vec!["expansion", "--t", "2", "--n", "5000", "--shift", "3"],
        vec!["verify", "--suite", "lemma32", "--seed", "7"],
        vec!["verify", "--suite", "oscillation", "--toy"],
        vec!["oscillate", "--epsilon", "0.5", "--n0", "10000", "--stages", "2"],
        vec![
            "fit",
            "--forbid",
            "1",
            "--grid",
            "200,300,400,500,600,700,800,900",
        ],
    ];
    for args in cases {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let out = std::process::Command::new(exe)
                .args(&args)
                .output()
                .expect("binary runs");
            assert!(
                out.status.success(),
                "command {args:?} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(out.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "non-deterministic output for {args:?}");
    }
    println!("[PASS] criterion 10: CLI output byte-identical across repeated runs for all subcommands");
}
