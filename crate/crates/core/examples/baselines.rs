//! Classical shift-and-add against canonical signed-digit recoding.

use operand_fold::baselines::{classical_multiply, csd_multiply, csd_recode};
use operand_fold::BitNum;

fn main() {
    let b = BitNum::from(0b0111_0111_1011u64);
    let naf = csd_recode(&b);
    let digits: String = naf
        .digits()
        .iter()
        .rev()
        .map(|d| match d {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect();
    println!("b = {b:b} ({} ones)", b.weight());
    println!("naf = {digits} ({} nonzero digits)", naf.nonzero_count());

    let a = BitNum::from(12345u64);
    let (p1, adds) = classical_multiply(&a, &b);
    let (p2, ops) = csd_multiply(&a, &b);
    assert_eq!(p1, p2);
    println!("{a} * {b} = {p1}: classical {adds} additions, csd {ops} add/sub");
}
