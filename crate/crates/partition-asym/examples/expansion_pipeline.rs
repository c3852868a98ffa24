//! The shifted-count expansion machinery: a-coefficients of
//! q(n) e^{-C sqrt n}, the coefficient polynomials g(z,s) with their closed
//! leading terms, the normalized residual of the truncated main term against
//! exact p(n-s), and the exact alternating subset-sum identity that collapses
//! the inclusion-exclusion sum to a single surviving order.
//!
//! Run: cargo run -p partition-asym --example expansion_pipeline

use partition_asym::count::global_table;
use partition_asym::expansion::{alternating_moment, g_leading_reference, Expansion};

fn main() {
    let p = 256;
    let t = 4;
    let e = Expansion::new(t, p).unwrap();

    println!("a-coefficients (a_0 = C = 2.5650996...):");
    for (k, a) in e.a_coeffs().iter().enumerate() {
        println!("  a_{k} = {:.12}", a.to_f64_lossy());
    }

    println!("\ng(z, s) leading coefficients vs (-1)^z C^(z+1) / (2^z z!):");
    for z in 0..=t {
        let lead = e.g_poly(z).coeff(z);
        let closed = g_leading_reference(z, p);
        println!(
            "  z = {z}: pipeline {:.12}, closed form {:.12}",
            lead.to_f64_lossy(),
            closed.to_f64_lossy()
        );
    }

    let table = global_table();
    println!("\nnormalized residuals of the truncated main term for p(n - s):");
    for t_param in 0..=2usize {
        let e = Expansion::new(t_param, p).unwrap();
        let r = e.verify(10_000, 3, table).unwrap();
        println!("  t = {t_param}, (n, s) = (10^4, 3): {:+.4}", r.to_f64_lossy());
    }

    println!("\nalternating subset-sum moments for s = (1, 2, 5):");
    for z in 0..=3usize {
        let m = alternating_moment(&[1, 2, 5], z).unwrap();
        println!("  z = {z}: {m}");
    }
    println!("  (zero below z = t = 3; at z = 3 the value is (-1)^3 3! * 1*2*5 = -60)");
}
