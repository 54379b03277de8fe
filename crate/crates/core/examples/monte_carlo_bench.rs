//! Seeded average-case measurement against the closed-form expectation.

use operand_fold::costmodel::{expected_total, to_f64};
use operand_fold::trials::{bench_classical, bench_folded, DEFAULT_SEED};

fn main() {
    let trials = 1000;
    println!("   m  k    f_avg    exact  measured  stderr");
    for (m, k) in [(64, 3), (256, 4), (1024, 5), (2048, 5)] {
        let row = bench_folded(m, k, trials, DEFAULT_SEED).unwrap();
        println!(
            "{m:>4}  {k}  {:>7.3}  {:>7.3}  {:>8.3}  {:>6.3}",
            to_f64(&row.f_avg),
            to_f64(&expected_total(m, k).unwrap()),
            row.measured.mean(),
            row.measured.stderr()
        );
    }
    let classical = bench_classical(1024, trials, DEFAULT_SEED);
    println!("classical m=1024: {:.3} ± {:.3}", classical.mean(), classical.stderr());
}
