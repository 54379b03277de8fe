//! Multiplies two random 1024-bit operands at every degree and compares the
//! addition ledgers.

use operand_fold::baselines::classical_multiply;
use operand_fold::costmodel::{f_avg, f_wst, to_f64};
use operand_fold::{multiply, random_bitnum};

fn main() {
    let m = 1024;
    let a = random_bitnum(m, 1);
    let b = random_bitnum(m, 2);
    let (reference, classical) = classical_multiply(&a, &b);
    println!("classical: {classical} additions");
    println!(" k  accumulate  combine  horner  total   f_avg   f_wst");
    for k in 1..=8 {
        let (product, ledger) = multiply(&a, &b, m, k).unwrap();
        assert_eq!(product, reference);
        println!(
            "{k:>2}  {:>10}  {:>7}  {:>6}  {:>5}  {:>6.1}  {:>6}",
            ledger.accumulate_adds,
            ledger.combine_adds,
            ledger.horner_adds,
            ledger.total(),
            to_f64(&f_avg(m as u64, k).unwrap()),
            f_wst(m as u64, k).unwrap()
        );
    }
}
