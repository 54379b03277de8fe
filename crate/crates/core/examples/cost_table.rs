//! Optimal degree per operand width and the resulting speed-ups.

use operand_fold::costmodel::{
    asymptotic_ratio, classical_improvement, combine_cost, csd_improvement, fixed3, optimal_k, table1, yen_cost,
    DEFAULT_K_MAX,
};

fn main() {
    for row in table1() {
        println!("{row}");
    }
    println!();
    for m in [64u64, 256, 1024, 2048, 4096] {
        let k = optimal_k(m, DEFAULT_K_MAX);
        println!(
            "m={m:<5} k={k}  vs classical {}  vs csd {}",
            fixed3(&classical_improvement(m, k).unwrap()),
            fixed3(&csd_improvement(m, k).unwrap())
        );
    }
    println!();
    for k in 1..=8 {
        println!(
            "k={k}  combine {:>3}  per-part {:>4}  limit ratio {}",
            combine_cost(k),
            yen_cost(k),
            fixed3(&asymptotic_ratio(k))
        );
    }
}
