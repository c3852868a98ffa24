//! Growth of ideal counting functions: the e^{C sqrt n} n^{-k} envelope for
//! ideals with many pairwise independent forbidden partitions, and the
//! exploratory exponent fit probing whether finite-basis ideals grow like
//! K e^{C sqrt n} n^{-1-k} with k a half-integer.
//!
//! Run: cargo run -p partition-asym --example growth_fit

use partition_asym::count::{global_table, PartSet, PartitionMultiset};
use partition_asym::ideals::{fit_growth_exponent, growth_bound_check, Basis};
use partition_asym::xreal::XReal;

fn main() {
    let p = 256;
    let table = global_table();

    let z = Basis::new(vec![
        PartitionMultiset::from_parts(&[1]).unwrap(),
        PartitionMultiset::from_parts(&[2]).unwrap(),
        PartitionMultiset::from_parts(&[3]).unwrap(),
    ])
    .unwrap();
    let grid: Vec<u64> = (1..=10).map(|i| i * 200).collect();
    let bound = XReal::from_f64(0.2, p);
    let report = growth_bound_check(&z, 2, &grid, &bound, table, p).unwrap();
    println!("growth bound, k = 2, norms {:?}:", report.norms);
    println!("  p_-Gamma(n) * n^2 * e^(-C sqrt n) over n = 200..2000:");
    for row in &report.rows {
        println!("    n = {:>4}: {:.6}", row.n, row.value.to_f64_lossy());
    }
    println!("  max {:.6} <= pinned {:.1}: {}", report.max_value.to_f64_lossy(), 0.2, report.pass);

    println!("\nexponent fit on exact counts up to 4*10^4:");
    let fit_grid: Vec<u64> = vec![2500, 3536, 5000, 7071, 10000, 14142, 20000, 28284, 40000];
    for (label, parts, expected) in [
        ("forbid {1}", vec![1u64], 0.5),
        ("forbid {1,2}", vec![1, 2], 1.0),
        ("unrestricted", vec![], 0.0),
    ] {
        let s = PartSet::new(parts).unwrap();
        let counts: Vec<_> = fit_grid
            .iter()
            .map(|&n| (n, table.avoiding_count_ie(n, &s).unwrap()))
            .collect();
        let fit = fit_growth_exponent(&counts, p).unwrap();
        println!(
            "  {label:>13}: k_hat = {:+.4} (expected {expected}), nearest half-integer {}, distance {:.4}",
            fit.k_hat.to_f64_lossy(),
            fit.nearest_half_integer,
            fit.half_integer_distance.to_f64_lossy()
        );
    }
}
