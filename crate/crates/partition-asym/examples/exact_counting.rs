//! Exact counting by independent algorithms: unrestricted p(n) from the
//! pentagonal recurrence, restricted and avoiding counts by DP, avoiding
//! counts again by inclusion-exclusion, and the brute-force enumeration
//! oracle they are all checked against.
//!
//! Run: cargo run -p partition-asym --example exact_counting

use partition_asym::count::{enumerate_partitions, global_table, PartSet};

fn main() {
    let table = global_table();

    println!("unrestricted p(n), pentagonal recurrence vs enumeration:");
    for n in [0u64, 5, 10, 30, 60] {
        let exact = table.partition_count(n).unwrap();
        let by_enum = enumerate_partitions(n).unwrap().count();
        println!("  p({n:2}) = {exact:>8}   (enumeration: {by_enum})");
    }
    println!("  p(100) = {}", table.partition_count(100).unwrap());

    let s = PartSet::new([1, 2]).unwrap();
    println!("\npartitions of n avoiding parts {s}:");
    for n in [6u64, 20, 100] {
        let dp = table.avoiding_count_dp(n, &s).unwrap();
        let ie = table.avoiding_count_ie(n, &s).unwrap();
        assert_eq!(dp, ie);
        println!("  p_-S({n:3}) = {dp:>10}   (DP and inclusion-exclusion agree)");
    }

    let allowed = PartSet::new([1, 2]).unwrap();
    println!("\npartitions of n using only parts {allowed}:");
    for n in [6u64, 21, 100] {
        let count = table.restricted_count(n, &allowed).unwrap();
        println!("  p_S({n:3}) = {count:>4}   (closed form: floor(n/2)+1 = {})", n / 2 + 1);
    }

    println!("\nall partitions of 5, reverse-lexicographic:");
    for p in enumerate_partitions(5).unwrap() {
        println!("  {p}");
    }
}
