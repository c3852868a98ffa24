//! The oscillating interval ideal: stages (s_i, t_i) chosen so the counting
//! function is exactly zero just before each new interval opens, yet exceeds
//! p(n f(n)) at the interval tops. Stage values explode doubly
//! exponentially, so stage 2 onward lives in log space; the inequality chain
//! behind the second condition is certified with log-space margins at
//! stage 1.
//!
//! Run: cargo run -p partition-asym --example oscillating_ideal

use partition_asym::count::global_table;
use partition_asym::ideals::oscillation::{
    oscillation_certificate, oscillation_sequence, zero_window_check, zero_window_check_stages,
    OscillationParams,
};
use partition_asym::ideals::{interval_ideal_count, IntervalIdealSpec};
use partition_asym::xreal::XReal;

fn main() {
    let p = 256;

    println!("toy spec: parts {{2,3}} with multiplicity cap 3 (mass 15, s_2 = 29)");
    let toy = IntervalIdealSpec::new(vec![(2, 3)]).unwrap();
    for n in [5u64, 15, 16, 28] {
        println!("  p({n:2}, X) = {}", interval_ideal_count(n, &toy).unwrap());
    }
    println!("  zero window before s_2: {}", zero_window_check(&toy, 1).unwrap());

    let params = OscillationParams::new(XReal::from_f64(0.5, p), 10_000, p).unwrap();
    let stages = oscillation_sequence(&params, 2).unwrap();
    println!("\ntrue sequence, eps = 1/2, surrogate n_0 = 10^4:");
    for st in &stages {
        println!("  stage {}: s = {}, t = {}", st.index, st.s, st.t);
    }
    for i in 1..=2usize {
        println!(
            "  zero window at stage {i}: {}",
            zero_window_check_stages(&stages, i, p).unwrap()
        );
    }

    let cert = oscillation_certificate(&params, &stages, 1, global_table()).unwrap();
    println!("\nstage-1 certificate (log-space margins, all must be positive):");
    println!("  p(n)^(1-sqrt f) > n^(3s/2):        {:+.3}", cert.ineq11_margin.to_f64_lossy());
    println!("  p(t)^(sqrt f) vs p(t f(t))/8:      {:+.3}", cert.squeeze_margin.to_f64_lossy());
    println!("  (C t / 2)^s s! > 16:               {:+.3}", cert.factor_margin.to_f64_lossy());
    println!("  K = 1/(8 sqrt 3) > 1/16:           {}", cert.k_constant_ok);
    println!(
        "  threshold hypothesis at n = t_1:    exact = {}, sandwich = {:?}, half-ratio = {:?}",
        cert.hypothesis.exact, cert.hypothesis.hr_sandwich_ok, cert.hypothesis.comp_ratio_ok
    );
    println!(
        "  threshold hypothesis at n = {:?}: exact = {}, sandwich = {:?}",
        cert.hypothesis_tf.n, cert.hypothesis_tf.exact, cert.hypothesis_tf.hr_sandwich_ok
    );
    println!("  all margins positive: {}", cert.all_margins_positive);
}
