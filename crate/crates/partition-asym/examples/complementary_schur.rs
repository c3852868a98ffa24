//! The complementary Schur asymptotic: partitions avoiding a finite part set
//! S satisfy p_{-S}(n) ~ p(n) * prod_{s in S} (C s / (2 sqrt n)). This prints
//! the convergence table behind `partition-asym converge`: the exact column
//! is exact, and |ratio - 1| drains away like 1/sqrt(n).
//!
//! Run: cargo run -p partition-asym --example complementary_schur

use partition_asym::asym::{ratio_report, PMode};
use partition_asym::count::{global_table, PartSet};

fn main() {
    let table = global_table();
    let grid = [2500u64, 5000, 10_000, 20_000, 40_000];
    for parts in [vec![1u64], vec![2, 3]] {
        let s = PartSet::new(parts).unwrap();
        println!("S = {s}:");
        println!("{:>7}  {:>26}  {:>12}  {:>12}", "n", "exact p_-S(n) (digits)", "ratio", "|ratio-1|");
        let rows = ratio_report(&grid, &s, PMode::Exact, table, 256).unwrap();
        for r in rows {
            println!(
                "{:>7}  {:>23} ...  {:>12.8}  {:>12.4e}",
                r.n,
                format!("{} digits", r.exact.to_string().len()),
                r.ratio.to_f64_lossy(),
                r.abs_err_ratio.to_f64_lossy()
            );
        }
        println!();
    }
    println!("(full-precision decimal tables: `partition-asym converge --s 2,3 --grid ...`)");
}
