//! Bit-density recursion under repeated halving, predicted against measured.

use operand_fold::density::{density_series, logistic_orbit, telescoping_sum, Sampling, SeriesKind, SeriesParams};

fn main() {
    let orbit = logistic_orbit(0.5, 8).unwrap();
    println!("orbit from 0.5: {:.4?}", orbit);
    println!("sum of squares over 8 steps: {:.6}", telescoping_sum(0.5, 8).unwrap());

    for kind in [SeriesKind::NodesGain, SeriesKind::FullResidual] {
        let params = SeriesParams {
            kind,
            delta0: 0.5,
            b: 4096,
            depth: 8,
            trials: 40,
            seed: 0x5EED,
            sampling: Sampling::Bernoulli,
        };
        println!("\n{kind:?}");
        println!("depth  predicted   measured  stderr");
        for p in density_series(&params).unwrap() {
            println!(
                "{:>5}  {:>9.2}  {:>9.2}  {:>6.2}",
                p.depth_or_iter, p.predicted, p.measured, p.stderr
            );
        }
    }
}
