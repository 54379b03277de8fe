//! Reference multipliers: classical accumulate-and-add and canonical
//! signed-digit (NAF) shift-add/shift-subtract. Both count one unit per
//! add or subtract of a shifted multiplicand.

use crate::bitnum::BitNum;

/// Classical accumulate-and-add. The count is exactly `weight(B)`.
pub fn classical_multiply(a: &BitNum, b: &BitNum) -> (BitNum, u64) {
    let mut acc = BitNum::zero();
    let mut adds = 0;
    for pos in b.ones_positions() {
        acc += &(a << pos);
        adds += 1;
    }
    (acc, adds)
}

/// Signed-digit string over {-1, 0, +1}, least significant digit first, in
/// non-adjacent form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedDigitString {
    digits: Vec<i8>,
}

impl SignedDigitString {
    pub fn digits(&self) -> &[i8] {
        &self.digits
    }

    pub fn nonzero_count(&self) -> u64 {
        self.digits.iter().filter(|&&d| d != 0).count() as u64
    }

    pub fn is_non_adjacent(&self) -> bool {
        self.digits.windows(2).all(|w| w[0] == 0 || w[1] == 0)
    }

    /// `Σ d_i 2^i`; `None` if the string encodes a negative number.
    pub fn value(&self) -> Option<BitNum> {
        let mut pos = BitNum::zero();
        let mut neg = BitNum::zero();
        for (i, &d) in self.digits.iter().enumerate() {
            match d {
                1 => pos += &(&BitNum::one() << i),
                -1 => neg += &(&BitNum::one() << i),
                _ => {}
            }
        }
        pos.checked_sub(&neg).ok()
    }
}

/// Non-adjacent form of `b`.
pub fn csd_recode(b: &BitNum) -> SignedDigitString {
    let mut digits = Vec::with_capacity(b.bit_length() + 1);
    let mut carry = 0u8;
    let mut i = 0;
    while i < b.bit_length() || carry != 0 {
        let t = u8::from(b.bit(i)) + carry;
        let digit = match t {
            0 => {
                carry = 0;
                0
            }
            2 => {
                carry = 1;
                0
            }
            _ if b.bit(i + 1) => {
                carry = 1;
                -1
            }
            _ => {
                carry = 0;
                1
            }
        };
        digits.push(digit);
        i += 1;
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
    SignedDigitString { digits }
}

/// Shift-add/shift-subtract over the NAF of `B`, most significant digit
/// first so the running sum never goes negative.
pub fn csd_multiply(a: &BitNum, b: &BitNum) -> (BitNum, u64) {
    let naf = csd_recode(b);
    let mut acc = BitNum::zero();
    let mut ops = 0;
    for (i, &d) in naf.digits.iter().enumerate().rev() {
        match d {
            1 => acc += &(a << i),
            -1 => acc = acc.checked_sub(&(a << i)).expect("NAF prefix values are non-negative"),
            _ => continue,
        }
        ops += 1;
    }
    (acc, ops)
}
