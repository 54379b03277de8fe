#![allow(dead_code)]

use num_bigint::BigUint;
use operand_fold::BitNum;

pub fn to_big(x: &BitNum) -> BigUint {
    BigUint::parse_bytes(format!("{x:x}").as_bytes(), 16).unwrap()
}

pub fn from_big(x: &BigUint) -> BitNum {
    format!("0x{}", x.to_str_radix(16)).parse().unwrap()
}

/// Characteristic vector of `pattern` built bit by bit from `B` directly.
pub fn oracle_vector(b: &BigUint, m: usize, k: usize, pattern: usize) -> BigUint {
    let n = m.div_ceil(k);
    let mut v = BigUint::default();
    for r in 0..n {
        let col = (0..k).fold(0, |acc, j| acc | (usize::from(b.bit((j * n + r) as u64)) << j));
        if col == pattern {
            v.set_bit(r as u64, true);
        }
    }
    v
}

/// `B_j` of the decomposition, taken straight from the bits of `B`.
pub fn oracle_part(b: &BigUint, m: usize, k: usize, j: usize) -> BigUint {
    let n = m.div_ceil(k);
    (b >> ((j - 1) * n)) & ((BigUint::from(1u8) << n) - 1u8)
}
