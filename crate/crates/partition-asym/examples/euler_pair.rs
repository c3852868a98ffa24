//! The Cohen-Remmel equality through the classic Euler pair: forbidding
//! every doubled part (i, i) leaves the distinct-part partitions, forbidding
//! every even part (2i) leaves the odd-part partitions, and equal union
//! norms force the two counting functions to agree everywhere.
//!
//! Run: cargo run -p partition-asym --example euler_pair

use partition_asym::count::{global_table, PartitionMultiset};
use partition_asym::ideals::cohen_remmel_check;

fn main() {
    let table = global_table();
    let lambda: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[i, i]).unwrap())
        .collect();
    let gamma: Vec<PartitionMultiset> = (1..=10u64)
        .map(|i| PartitionMultiset::from_parts(&[2 * i]).unwrap())
        .collect();

    let report = cohen_remmel_check(&lambda, &gamma, 30, table).unwrap();
    println!(
        "union-norm hypothesis over all 2^10 index sets: {}",
        if report.hypothesis_holds { "holds" } else { "violated" }
    );
    println!("\n{:>4}  {:>10}  {:>10}", "n", "distinct", "odd parts");
    for row in report.rows.iter().skip(1) {
        println!("{:>4}  {:>10}  {:>10}", row.n, row.lambda_count, row.gamma_count);
    }
    println!(
        "\ncounts verified by enumeration and inclusion-exclusion; pass = {}",
        report.pass
    );

    // A pair that fails the hypothesis at the singleton index set.
    let bad = cohen_remmel_check(
        &[PartitionMultiset::from_parts(&[1]).unwrap()],
        &[PartitionMultiset::from_parts(&[2]).unwrap()],
        5,
        table,
    )
    .unwrap();
    println!(
        "\ncounterexample (1) vs (2): hypothesis holds = {}, violated sets = {:?}",
        bad.hypothesis_holds, bad.violated_index_sets
    );
}
