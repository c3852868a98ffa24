//! Reproduces the measured values quoted in the `tolerances` module. Run
//! this after touching any numeric path and compare against the pins.
//!
//! Run: cargo run --release -p partition-asym --example measure_tolerances

use partition_asym::asym::{self, PMode};
use partition_asym::count::{global_table, PartSet, PartitionMultiset};
use partition_asym::expansion::Expansion;
use partition_asym::ideals::{self, Basis};
use partition_asym::xreal::XReal;

fn main() {
    let p = 256usize;
    let t = global_table();

    let p3200 = t.partition_count(3200).unwrap();
    let strong = asym::hr_strong(3200, p);
    let rel = strong
        .sub(&XReal::from_biguint(&p3200, p))
        .div(&XReal::from_biguint(&p3200, p))
        .abs();
    println!("hr_strong rel err at 3200: {}", rel.to_f64_lossy());
    for n in [100u64, 200, 400, 800, 1600, 3200] {
        let pn = t.partition_count(n).unwrap();
        let e = asym::hr_strong(n, p)
            .sub(&XReal::from_biguint(&pn, p))
            .div(&XReal::from_biguint(&pn, p))
            .abs();
        println!("  hr_strong rel at {n}: {:e}", e.to_f64_lossy());
    }

    for (label, parts) in [
        ("S={1}", vec![1u64]),
        ("S={2}", vec![2]),
        ("S={2,3}", vec![2, 3]),
        ("S={1,5,6}", vec![1, 5, 6]),
    ] {
        let s = PartSet::new(parts).unwrap();
        let rows = asym::ratio_report(&[2500, 10_000, 40_000], &s, PMode::Exact, t, p).unwrap();
        let errs: Vec<f64> = rows
            .iter()
            .map(|r| r.abs_err_ratio.to_f64_lossy())
            .collect();
        println!("comp-schur {label}: {errs:?}");
    }

    for t_param in 0..=2usize {
        let e = Expansion::new(t_param, p).unwrap();
        let mut max = 0f64;
        for &n in &[10_000u64, 40_000] {
            for &s in &[1u64, 3, 7] {
                let r = e.verify(n, s, t).unwrap().abs().to_f64_lossy();
                if r > max {
                    max = r;
                }
            }
        }
        println!("expansion residual max t={t_param}: {max}");
    }

    let z1 = Basis::new(vec![
        PartitionMultiset::from_parts(&[1]).unwrap(),
        PartitionMultiset::from_parts(&[2, 2]).unwrap(),
    ])
    .unwrap();
    let grid: Vec<u64> = (1..=20).map(|i| i * 100).collect();
    let big = XReal::from_u64(1000, p);
    let r1 = ideals::growth_bound_check(&z1, 1, &grid, &big, t, p).unwrap();
    println!("growth bound k=1 max: {}", r1.max_value.to_f64_lossy());

    let z2 = Basis::new(vec![
        PartitionMultiset::from_parts(&[1]).unwrap(),
        PartitionMultiset::from_parts(&[2]).unwrap(),
        PartitionMultiset::from_parts(&[3]).unwrap(),
    ])
    .unwrap();
    let r2 = ideals::growth_bound_check(&z2, 2, &grid, &big, t, p).unwrap();
    println!("growth bound k=2 (norms 1,2,3) max: {}", r2.max_value.to_f64_lossy());

    // Fit probe values.
    let fit_grid: Vec<u64> = vec![2500, 3536, 5000, 7071, 10000, 14142, 20000, 28284, 40000];
    for (label, parts) in [("F_(1)", vec![1u64]), ("F_(1),(2)", vec![1, 2]), ("none", vec![])] {
        let s = PartSet::new(parts).unwrap();
        let counts: Vec<_> = fit_grid
            .iter()
            .map(|&n| (n, t.avoiding_count_ie(n, &s).unwrap()))
            .collect();
        let fit = ideals::fit_growth_exponent(&counts, p).unwrap();
        println!("fit {label}: k_hat = {}", fit.k_hat.to_f64_lossy());
    }
}
