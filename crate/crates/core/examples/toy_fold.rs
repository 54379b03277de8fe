//! Folds a 12-bit multiplier in half and prints every step.

use operand_fold::folding::trace;
use operand_fold::BitNum;

fn main() {
    let a = BitNum::from(0b1011u64);
    let b: BitNum = "0b101010100011".parse().unwrap();
    let t = trace(&a, &b, 12, 2).unwrap();
    println!("{t}");
}
